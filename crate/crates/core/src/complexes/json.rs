use serde::{Deserialize, Serialize};

use crate::algebra::{AlgMatrix, Algebra};
use crate::{Error, Result};

use super::ProjComplex;

/// Serialized complex. `mults[i][v]` counts the summands `P_v` in degree
/// `degrees[0] + i` (summands are ordered by vertex); `diffs[i]` lists the
/// entries of the differential leaving that degree in row-major order, each
/// as `[coefficient, basis label]` terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub degrees: [i32; 2],
    pub mults: Vec<Vec<usize>>,
    pub diffs: Vec<Vec<Vec<(u32, String)>>>,
}

impl ComplexJson {
    pub fn from_complex(a: &Algebra, x: &ProjComplex) -> Self {
        let x = x.clone().sorted();
        let (_, mults) = x.signature(a.num_vertices());
        let diffs = x
            .diffs()
            .iter()
            .map(|d| {
                let mut entries = Vec::new();
                for r in 0..d.rows().len() {
                    for c in 0..d.cols().len() {
                        let block = a.block(d.cols()[c], d.rows()[r]);
                        let terms = d
                            .get(r, c)
                            .iter()
                            .zip(block)
                            .filter(|(&coeff, _)| coeff != 0)
                            .map(|(&coeff, &b)| (coeff, a.basis()[b].label.clone()))
                            .collect();
                        entries.push(terms);
                    }
                }
                entries
            })
            .collect();
        ComplexJson {
            degrees: [x.lo(), x.hi()],
            mults,
            diffs,
        }
    }

    pub fn to_complex(&self, a: &Algebra) -> Result<ProjComplex> {
        let n = a.num_vertices();
        let expected = (self.degrees[1] - self.degrees[0] + 1).max(0) as usize;
        if self.mults.len() != expected {
            return Err(Error::Invalid("mults does not match the degree range".into()));
        }
        let terms: Vec<Vec<usize>> = self
            .mults
            .iter()
            .map(|m| {
                if m.len() != n {
                    return Err(Error::Invalid("multiplicity vector has the wrong length".into()));
                }
                Ok((0..n).flat_map(|v| std::iter::repeat_n(v, m[v])).collect())
            })
            .collect::<Result<_>>()?;
        if self.diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::Invalid("expected one differential between consecutive degrees".into()));
        }
        let mut diffs = Vec::new();
        for (i, entries) in self.diffs.iter().enumerate() {
            let (cols, rows) = (&terms[i], &terms[i + 1]);
            if entries.len() != rows.len() * cols.len() {
                return Err(Error::Invalid(format!("differential {i} has the wrong number of entries")));
            }
            let mut d = AlgMatrix::zeros(a, rows, cols);
            for (e, list) in entries.iter().enumerate() {
                let (r, c) = (e / cols.len(), e % cols.len());
                for (coeff, label) in list {
                    let b = a
                        .basis_index(label)
                        .ok_or_else(|| Error::Invalid(format!("unknown basis element {label:?}")))?;
                    let el = &a.basis()[b];
                    if el.target != cols[c] || el.source != rows[r] {
                        return Err(Error::Invalid(format!("{label:?} does not fit entry ({r}, {c}) of differential {i}")));
                    }
                    if *coeff >= a.field().modulus() {
                        return Err(Error::Invalid(format!("coefficient {coeff} is not reduced")));
                    }
                    d.add_basis(a, r, c, b, *coeff);
                }
            }
            diffs.push(d);
        }
        if terms.is_empty() {
            return Ok(ProjComplex::zero());
        }
        ProjComplex::new(a, self.degrees[0], terms, diffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::tests::s1_complex;
    use crate::testing::corpus_algebra;

    #[test]
    fn round_trip_is_exact() {
        let a = corpus_algebra("square_commutative");
        let long = a.block(3, 0)[0];
        let mut d = AlgMatrix::zeros(&a, &[0, 1], &[3]);
        d.add_basis(&a, 0, 0, long, 7);
        d.add_basis(&a, 1, 0, a.basis_index("b").unwrap(), 32002);
        let x = ProjComplex::two_term(d).direct_sum(&ProjComplex::stalk(&[1, 2], -1), &a);
        let j = ComplexJson::from_complex(&a, &x);
        let text = serde_json::to_string(&j).unwrap();
        let back: ComplexJson = serde_json::from_str(&text).unwrap();
        let y = back.to_complex(&a).unwrap();
        assert_eq!(y, x);
        assert_eq!(serde_json::to_string(&ComplexJson::from_complex(&a, &y)).unwrap(), text);
    }

    #[test]
    fn layout_for_the_s1_complex() {
        let a = corpus_algebra("a2");
        let j = ComplexJson::from_complex(&a, &s1_complex(&a));
        assert_eq!(serde_json::to_string(&j).unwrap(), r#"{"degrees":[-1,0],"mults":[[0,1],[1,0]],"diffs":[[[[1,"a"]]]]}"#);
        let zero = ComplexJson::from_complex(&a, &ProjComplex::zero());
        assert!(zero.to_complex(&a).unwrap().is_zero());
    }

    #[test]
    fn rejects_misplaced_paths() {
        let a = corpus_algebra("a2");
        let mut j = ComplexJson::from_complex(&a, &s1_complex(&a));
        j.diffs[0][0][0].1 = "e_1".into();
        assert!(j.to_complex(&a).is_err());
    }
}
