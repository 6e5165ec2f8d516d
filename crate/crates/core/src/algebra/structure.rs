use crate::exactlinalg::{Echelon, Matrix, PrimeField};
use crate::{Error, Result};

use super::{check_associative, Algebra, BasisElement, Presentation, Sparse};

fn mul_dense(field: PrimeField, table: &[Vec<Sparse>], a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; table.len()];
    for (x, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (y, &cb) in b.iter().enumerate() {
            if cb == 0 {
                continue;
            }
            let c = field.mul(ca, cb);
            for &(z, cz) in &table[x][y] {
                out[z] = field.mul_add(out[z], c, cz);
            }
        }
    }
    out
}

fn unit(d: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

pub(super) fn build(
    field: PrimeField,
    name: String,
    vertex_labels: Vec<String>,
    table: Vec<Vec<Sparse>>,
    idempotents: Vec<Vec<u32>>,
) -> Result<(Algebra, Vec<Vec<u32>>)> {
    let d = table.len();
    let n = idempotents.len();
    if n == 0 || vertex_labels.len() != n {
        return Err(Error::Invalid("need one label per idempotent".into()));
    }
    if table.iter().any(|row| row.len() != d) {
        return Err(Error::Invalid("multiplication table is not square".into()));
    }
    check_associative(field, &table)?;
    let mul = |a: &[u32], b: &[u32]| mul_dense(field, &table, a, b);

    // orthogonal idempotents summing to one
    for (i, ei) in idempotents.iter().enumerate() {
        for (j, ej) in idempotents.iter().enumerate() {
            let prod = mul(ei, ej);
            let expect = if i == j { ei.clone() } else { vec![0; d] };
            if prod != expect {
                return Err(Error::Invalid(format!(
                    "idempotents {i} and {j} are not orthogonal idempotents"
                )));
            }
        }
    }
    let one = idempotents.iter().fold(vec![0u32; d], |acc, e| {
        acc.iter().zip(e).map(|(&a, &b)| field.add(a, b)).collect()
    });
    for x in 0..d {
        let u = unit(d, x);
        if mul(&one, &u) != u || mul(&u, &one) != u {
            return Err(Error::Invalid("idempotents do not sum to the identity".into()));
        }
    }

    // Peirce blocks e_t A e_s
    let mut blocks: Vec<Vec<Vec<Vec<u32>>>> = vec![vec![Vec::new(); n]; n];
    let mut total = 0;
    for t in 0..n {
        for s in 0..n {
            // keep e_t as the first vector of the corner
            let mut vecs: Vec<Vec<u32>> = Vec::new();
            if s == t {
                vecs.push(idempotents[t].clone());
            }
            let mut check = Echelon::from_vectors(field, d, vecs.iter());
            for x in 0..d {
                let v = mul(&mul(&idempotents[t], &unit(d, x)), &idempotents[s]);
                if v.iter().any(|&c| c != 0) && check.insert(&v) == crate::exactlinalg::Insert::New {
                    vecs.push(v);
                }
            }
            total += vecs.len();
            blocks[t][s] = vecs;
        }
    }
    if total != d {
        return Err(Error::Invalid("Peirce decomposition does not span the algebra".into()));
    }

    // radical of each corner: kernel of the normalised regular trace
    let mut radical_corners: Vec<Vec<Vec<u32>>> = Vec::with_capacity(n);
    for i in 0..n {
        let corner = &blocks[i][i];
        let m = corner.len();
        let span = Echelon::from_vectors(field, d, corner.iter());
        let coords = |v: &[u32]| span.coordinates(v).expect("corner is closed under products");
        let trace = |x: &[u32]| {
            let mut tr = 0;
            for (j, c) in corner.iter().enumerate() {
                tr = field.add(tr, coords(&mul(x, c))[j]);
            }
            tr
        };
        let m_inv = field.inv((m as u64 % field.modulus() as u64) as u32);
        let rad: Vec<Vec<u32>> = corner[1..]
            .iter()
            .map(|c| {
                let lambda = field.mul(trace(c), m_inv);
                c.iter()
                    .zip(&corner[0])
                    .map(|(&a, &e)| field.sub(a, field.mul(lambda, e)))
                    .collect()
            })
            .collect();
        // two-sided ideal of the corner
        for r in &rad {
            for c in corner {
                if trace(&mul(r, c)) != 0 || trace(&mul(c, r)) != 0 {
                    return Err(Error::IdempotentNotPrimitive(i));
                }
            }
        }
        // nilpotent
        let mut power = rad.clone();
        let mut steps = 0;
        while !power.is_empty() {
            let mut next = Echelon::new(field, d);
            for a in &power {
                for b in &rad {
                    let v = mul(a, b);
                    if v.iter().any(|&c| c != 0) {
                        next.insert(&v);
                    }
                }
            }
            power = next.rows().to_vec();
            steps += 1;
            if steps > m {
                return Err(Error::IdempotentNotPrimitive(i));
            }
        }
        radical_corners.push(rad);
    }

    // radical pieces R[t][s], then generators complementing rad^2 in each block
    let pieces: Vec<Vec<Vec<Vec<u32>>>> = (0..n)
        .map(|t| {
            (0..n)
                .map(|s| if s == t { radical_corners[s].clone() } else { blocks[t][s].clone() })
                .collect()
        })
        .collect();
    let mut gens: Vec<(usize, usize, Vec<u32>)> = Vec::new();
    for t in 0..n {
        for s in 0..n {
            let mut sq = Echelon::new(field, d);
            for m in 0..n {
                for x in &pieces[t][m] {
                    for y in &pieces[m][s] {
                        let v = mul(x, y);
                        if v.iter().any(|&c| c != 0) {
                            sq.insert(&v);
                        }
                    }
                }
            }
            for r in &pieces[t][s] {
                if sq.insert(r) == crate::exactlinalg::Insert::New {
                    gens.push((s, t, r.clone()));
                }
            }
        }
    }

    // monomial basis: products of generators by increasing length
    let mut new_basis: Vec<Vec<u32>> = idempotents.clone();
    let mut elems: Vec<BasisElement> = vertex_labels
        .iter()
        .enumerate()
        .map(|(v, l)| BasisElement {
            source: v,
            target: v,
            label: format!("e_{l}"),
        })
        .collect();
    let mut words: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut span = Echelon::from_vectors(field, d, new_basis.iter());
    let mut level: Vec<usize> = Vec::new();
    for (k, (s, t, v)) in gens.iter().enumerate() {
        span.insert(v);
        level.push(new_basis.len());
        new_basis.push(v.clone());
        elems.push(BasisElement {
            source: *s,
            target: *t,
            label: format!("r{}", k + 1),
        });
        words.push(vec![k]);
    }
    while !level.is_empty() {
        let mut next = Vec::new();
        for (k, (_, t, g)) in gens.iter().enumerate() {
            for &w in &level {
                if elems[w].target != gens[k].0 {
                    continue;
                }
                let v = mul(g, &new_basis[w]);
                if v.iter().all(|&c| c == 0) || span.insert(&v) != crate::exactlinalg::Insert::New {
                    continue;
                }
                let mut word = vec![k];
                word.extend_from_slice(&words[w]);
                // path notation reads in order of application
                let label = word.iter().rev().map(|&g| format!("r{}", g + 1)).collect::<Vec<_>>().join("*");
                next.push(new_basis.len());
                new_basis.push(v);
                elems.push(BasisElement {
                    source: elems[w].source,
                    target: *t,
                    label,
                });
                words.push(word);
            }
        }
        level = next;
    }
    if new_basis.len() != d {
        return Err(Error::Invalid("radical is not generated by its top".into()));
    }
    let change = Matrix::from_cols(field, d, &new_basis);
    let to_new = change
        .inverse()
        .ok_or_else(|| Error::Invalid("adapted basis is singular".into()))?;
    let mut new_table = vec![vec![Vec::new(); d]; d];
    for x in 0..d {
        for y in 0..d {
            if elems[x].source != elems[y].target {
                continue;
            }
            let prod = to_new.mul_vec(&mul(&new_basis[x], &new_basis[y]));
            new_table[x][y] = prod
                .into_iter()
                .enumerate()
                .filter(|&(_, c)| c != 0)
                .collect();
        }
    }
    // products across incompatible blocks must vanish in the adapted basis
    for x in 0..d {
        for y in 0..d {
            if elems[x].source != elems[y].target
                && mul(&new_basis[x], &new_basis[y]).iter().any(|&c| c != 0)
            {
                return Err(Error::Invalid("basis is not compatible with the idempotents".into()));
            }
        }
    }
    let generators: Vec<usize> = (n..n + gens.len()).collect();
    let alg = Algebra::assemble(
        field,
        name,
        vertex_labels,
        elems,
        new_table,
        generators,
        words,
        Presentation::StructureConstants,
    )?;
    Ok((alg, new_basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn ground_field() {
        let a = Algebra::build_from_structure_constants(
            f(),
            "k".into(),
            vec!["1".into()],
            vec![vec![vec![(0, 1)]]],
            vec![vec![1]],
        )
        .unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.loewy_length(), 1);
    }

    #[test]
    fn product_of_fields_has_zero_radical() {
        let table = vec![
            vec![vec![(0, 1)], vec![]],
            vec![vec![], vec![(1, 1)]],
        ];
        let a = Algebra::build_from_structure_constants(
            f(),
            String::new(),
            vec!["1".into(), "2".into()],
            table,
            vec![vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.generators().is_empty());
    }

    #[test]
    fn dual_numbers_in_a_skew_basis() {
        // basis u = 1 + x, v = x with x^2 = 0:
        // u*u = u + v, u*v = v, v*u = v, v*v = 0
        let m = 100; // -1 mod 101
        let table = vec![
            vec![vec![(0, 1), (1, 1)], vec![(1, 1)]],
            vec![vec![(1, 1)], vec![]],
        ];
        // identity = u - v
        let a = Algebra::build_from_structure_constants(
            f(),
            String::new(),
            vec!["1".into()],
            table,
            vec![vec![1, m]],
        )
        .unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.loewy_length(), 2);
        assert_eq!(a.generators().len(), 1);
    }

    #[test]
    fn truncated_polynomial_ring_gets_a_monomial_basis() {
        // k[x]/(x^3) on the basis {1, x, x + x^2}
        let table = vec![
            vec![vec![(0, 1)], vec![(1, 1)], vec![(2, 1)]],
            vec![vec![(1, 1)], vec![(1, 100), (2, 1)], vec![(1, 100), (2, 1)]],
            vec![vec![(2, 1)], vec![(1, 100), (2, 1)], vec![(1, 100), (2, 1)]],
        ];
        let a = Algebra::build_from_structure_constants(
            f(),
            String::new(),
            vec!["1".into()],
            table,
            vec![vec![1, 0, 0]],
        )
        .unwrap();
        assert_eq!(a.generators().len(), 1);
        assert_eq!(a.word(2).len(), 2);
        assert_eq!(a.loewy_length(), 3);
        assert_eq!(a.basis()[2].label, "r1*r1");
    }

    #[test]
    fn non_local_corner_is_rejected() {
        // F_p x F_p with a single idempotent 1
        let table = vec![
            vec![vec![(0, 1)], vec![]],
            vec![vec![], vec![(1, 1)]],
        ];
        let err = Algebra::build_from_structure_constants(
            f(),
            String::new(),
            vec!["1".into()],
            table,
            vec![vec![1, 1]],
        )
        .unwrap_err();
        assert_eq!(err, Error::IdempotentNotPrimitive(0));
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // basis {1, x, y} with xx = y, xy = x, yx = 0, yy = y:
        // (xx)x = 0 but x(xx) = x
        let table = vec![
            vec![vec![(0, 1)], vec![(1, 1)], vec![(2, 1)]],
            vec![vec![(1, 1)], vec![(2, 1)], vec![(1, 1)]],
            vec![vec![(2, 1)], vec![], vec![(2, 1)]],
        ];
        let err = Algebra::build_from_structure_constants(
            f(),
            String::new(),
            vec!["1".into()],
            table,
            vec![vec![1, 0, 0]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotAssociative(..)));
    }
}
