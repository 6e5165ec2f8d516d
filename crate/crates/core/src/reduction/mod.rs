//! Reduction of the interval of silting objects containing a presilting `U`
//! to support τ-tilting theory over `B = End(N̄) / [add Ū]`, where `N` is the
//! Bongartz completion and bars denote degree-zero cohomology.
//!
//! Modules over `B` are right modules; they are encoded as left modules over
//! a structure-constant algebra whose product is `x · y = y ∘ x`, so the
//! basis element given by a map `N̄_k -> N̄_j` is an arrow from `j` to `k`.

mod square;

pub use square::{verify_square, SquareReport, SquareWitness};

use serde::Serialize;

use crate::algebra::{Algebra, Sparse};
use crate::exactlinalg::{QuotientSpace, Matrix};
use crate::modules::{hom_space, torsion_canonical_seq, HomBasis, ModuleMap, ModuleRegistry, Representation};
use crate::session::Session;
use crate::silting::{bongartz, co_bongartz, h0, is_presilting, is_silting, SiltingObject};
use crate::{Error, Result};

/// `Hom(N̄_k, N̄_j)` modulo maps factoring through `add Ū`, in coordinates
/// of a fixed basis of the Hom space.
struct Corner {
    basis: HomBasis,
    quotient: QuotientSpace,
    /// Spanning maps of the ideal.
    ideal: Vec<ModuleMap>,
}

pub struct ReductionContext {
    pub u: SiltingObject,
    pub n: SiltingObject,
    pub m: SiltingObject,
    /// Summands of `N` not in `U`; position `v` is vertex `v` of `B`.
    pub vertices: Vec<usize>,
    nbar: Vec<Representation>,
    ubar: Representation,
    corners: Vec<Vec<Corner>>,
    /// The algebra whose left modules are the right `B`-modules.
    pub b: Algebra,
    /// Representative map `N̄_k -> N̄_j` of each generator of `b`.
    gen_maps: Vec<ModuleMap>,
    /// Registry for `b`-modules, shared by both reduction maps.
    pub b_modules: ModuleRegistry,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContextSummary {
    pub u: Vec<usize>,
    pub bongartz: Vec<usize>,
    pub co_bongartz: Vec<usize>,
    pub b_dim: usize,
    pub b_vertices: usize,
}

/// The image of `Hom(N̄_k, Ū) ⊗ Hom(Ū, Y)` under composition.
fn factoring_maps(a: &Algebra, src: &Representation, ubar: &Representation, y: &Representation) -> Vec<ModuleMap> {
    let into = hom_space(a, src, ubar);
    if into.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for g in hom_space(a, ubar, y) {
        for f in &into {
            let c = g.compose(f);
            if !c.is_zero() {
                out.push(c);
            }
        }
    }
    out
}

fn quotient_of(a: &Algebra, basis: &HomBasis, ideal: &[ModuleMap]) -> QuotientSpace {
    let sub: Vec<Vec<u32>> = ideal
        .iter()
        .map(|m| basis.coords(m).expect("composite is a homomorphism"))
        .collect();
    QuotientSpace::new(a.field(), basis.dim(), &sub)
}

fn combination(a: &Algebra, maps: &[ModuleMap], coeffs: &[u32], src: &Representation, tgt: &Representation) -> ModuleMap {
    let mut out = ModuleMap::zero(a.field(), src, tgt);
    for (m, &c) in maps.iter().zip(coeffs) {
        if c != 0 {
            out = out.add(&m.scale(c));
        }
    }
    out
}

fn sum_h0(s: &Session, t: &SiltingObject) -> Representation {
    let a = s.algebra();
    t.complexes(s)
        .iter()
        .fold(Representation::zero(a), |acc, x| acc.direct_sum(&h0(s, x), a))
}

impl ReductionContext {
    pub fn summary(&self) -> ContextSummary {
        ContextSummary {
            u: self.u.summands().to_vec(),
            bongartz: self.n.summands().to_vec(),
            co_bongartz: self.m.summands().to_vec(),
            b_dim: self.b.dim(),
            b_vertices: self.b.num_vertices(),
        }
    }

    fn require_summand(&self, t: &SiltingObject) -> Result<()> {
        match self.u.summands().iter().position(|&id| !t.contains(id)) {
            Some(i) => Err(Error::SummandMissing(i)),
            None => Ok(()),
        }
    }

    /// Builds the module `v ↦ space(v)` where a generator with representative
    /// `c : N̄_k -> N̄_j` acts by `h ↦ h ∘ c`. `act(j, k, c, col)` returns the
    /// coordinates in `space(k)` of the image of the `col`-th basis vector of
    /// `space(j)`.
    fn module_from<F>(&self, dims: Vec<usize>, mut act: F) -> Result<Representation>
    where
        F: FnMut(usize, usize, &ModuleMap, usize) -> Vec<u32>,
    {
        let f = self.b.field();
        let action = self
            .b
            .generators()
            .iter()
            .zip(&self.gen_maps)
            .map(|(&g, c)| {
                let (j, k) = (self.b.basis()[g].source, self.b.basis()[g].target);
                let cols: Vec<Vec<u32>> = (0..dims[j]).map(|col| act(j, k, c, col)).collect();
                if cols.is_empty() {
                    Matrix::zeros(f, dims[k], 0)
                } else {
                    Matrix::from_cols(f, dims[k], &cols)
                }
            })
            .collect();
        let rep = Representation::new(dims, action);
        if !rep.is_valid(&self.b) {
            return Err(Error::TheoremViolation("reduced module does not satisfy the relations of B".into()));
        }
        Ok(rep)
    }

    /// `Hom_A(N̄, f T̄)` with `f T̄` the torsion-free part of `T̄` for the torsion
    /// pair `(Fac Ū, Ū^⊥)`.
    pub fn red(&self, s: &Session, t: &SiltingObject) -> Result<Representation> {
        self.require_summand(t)?;
        let a = s.algebra();
        let free = torsion_canonical_seq(a, &sum_h0(s, t), &self.ubar).free;
        let homs: Vec<HomBasis> = self.nbar.iter().map(|nv| HomBasis::new(a, nv, &free)).collect();
        // precomposition must kill the ideal for the action to descend to B
        for j in 0..self.nbar.len() {
            for k in 0..self.nbar.len() {
                for i in &self.corners[j][k].ideal {
                    if homs[j].maps.iter().any(|h| !h.compose(i).is_zero()) {
                        return Err(Error::TheoremViolation("action on the torsion-free part is not well defined".into()));
                    }
                }
            }
        }
        let dims = homs.iter().map(|h| h.dim()).collect();
        self.module_from(dims, |j, k, c, col| {
            homs[k].coords(&homs[j].maps[col].compose(c)).expect("composite is a homomorphism")
        })
    }

    /// `Hom_A(N̄, T̄)` modulo maps factoring through `add Ū`.
    pub fn red_alt(&self, s: &Session, t: &SiltingObject) -> Result<Representation> {
        self.require_summand(t)?;
        let a = s.algebra();
        let tbar = sum_h0(s, t);
        let homs: Vec<HomBasis> = self.nbar.iter().map(|nv| HomBasis::new(a, nv, &tbar)).collect();
        let quots: Vec<QuotientSpace> = self
            .nbar
            .iter()
            .zip(&homs)
            .map(|(nv, h)| quotient_of(a, h, &factoring_maps(a, nv, &self.ubar, &tbar)))
            .collect();
        let dims = quots.iter().map(|q| q.dim()).collect();
        self.module_from(dims, |j, k, c, col| {
            let mut unit = vec![0; quots[j].dim()];
            unit[col] = 1;
            let h = combination(a, &homs[j].maps, &quots[j].lift(&unit), &self.nbar[j], &tbar);
            quots[k].coords(&homs[k].coords(&h.compose(c)).expect("composite is a homomorphism"))
        })
    }
}

/// Sets up the reduction at a presilting, non-silting `u`.
pub fn build_context(s: &Session, u: &SiltingObject) -> Result<ReductionContext> {
    if !is_presilting(s, u)? {
        return Err(Error::NotPresilting);
    }
    if is_silting(s, u)? {
        return Err(Error::AlreadySilting);
    }
    if u.is_empty() {
        return Err(Error::Invalid("the reduction needs a nonzero presilting object".into()));
    }
    let a = s.algebra();
    let f = a.field();
    let n = bongartz(s, u)?;
    let m = co_bongartz(s, u)?;
    let vertices: Vec<usize> = n.summands().iter().copied().filter(|&id| !u.contains(id)).collect();
    let nbar: Vec<Representation> = vertices.iter().map(|&id| h0(s, &s.complex(id))).collect();
    if nbar.iter().any(|x| x.is_zero()) {
        return Err(Error::TheoremViolation("a summand of the Bongartz completion outside U has zero cohomology".into()));
    }
    let ubar = sum_h0(s, u);
    let r = vertices.len();

    let corners: Vec<Vec<Corner>> = (0..r)
        .map(|j| {
            (0..r)
                .map(|k| {
                    let basis = HomBasis::new(a, &nbar[k], &nbar[j]);
                    let ideal = factoring_maps(a, &nbar[k], &ubar, &nbar[j]);
                    let quotient = quotient_of(a, &basis, &ideal);
                    Corner { basis, quotient, ideal }
                })
                .collect()
        })
        .collect();

    // input basis: (j, k, q) for the quotient coordinates q of corner (j, k)
    let mut elems: Vec<(usize, usize, usize)> = Vec::new();
    let mut offset = vec![vec![0; r]; r];
    for j in 0..r {
        for k in 0..r {
            offset[j][k] = elems.len();
            elems.extend((0..corners[j][k].quotient.dim()).map(|q| (j, k, q)));
        }
    }
    let d = elems.len();
    let rep = |j: usize, k: usize, q: usize| -> ModuleMap {
        let c = &corners[j][k];
        let mut unit = vec![0; c.quotient.dim()];
        unit[q] = 1;
        combination(a, &c.basis.maps, &c.quotient.lift(&unit), &nbar[k], &nbar[j])
    };
    let reps: Vec<ModuleMap> = elems.iter().map(|&(j, k, q)| rep(j, k, q)).collect();
    let class = |j: usize, k: usize, map: &ModuleMap| -> Sparse {
        let c = &corners[j][k];
        let coords = c.quotient.coords(&c.basis.coords(map).expect("composite is a homomorphism"));
        coords
            .into_iter()
            .enumerate()
            .filter(|&(_, x)| x != 0)
            .map(|(q, x)| (offset[j][k] + q, x))
            .collect()
    };
    // x · y = y ∘ x, defined when the codomain of x is the domain of y
    let mut table: Vec<Vec<Sparse>> = vec![vec![Vec::new(); d]; d];
    for (x, &(jx, kx, _)) in elems.iter().enumerate() {
        for (y, &(jy, ky, _)) in elems.iter().enumerate() {
            if ky == jx {
                table[x][y] = class(jy, kx, &reps[y].compose(&reps[x]));
            }
        }
    }
    let idempotents: Vec<Vec<u32>> = (0..r)
        .map(|v| {
            let mut e = vec![0; d];
            for (i, x) in class(v, v, &ModuleMap::identity(f, &nbar[v])) {
                e[i] = x;
            }
            e
        })
        .collect();
    let labels = vertices.iter().map(|id| format!("X{id}")).collect();
    let (b, basis) = Algebra::build_from_structure_constants_with_basis(
        f,
        format!("{}/reduced", a.name()),
        labels,
        table,
        idempotents,
    )?;
    let gen_maps = b
        .generators()
        .iter()
        .map(|&g| {
            let (j, k) = (b.basis()[g].source, b.basis()[g].target);
            let coeffs: Vec<u32> = (0..d)
                .map(|i| if elems[i].0 == j && elems[i].1 == k { basis[g][i] } else { 0 })
                .collect();
            debug_assert!(basis[g].iter().zip(&coeffs).all(|(x, y)| x == y));
            combination(a, &reps, &coeffs, &nbar[k], &nbar[j])
        })
        .collect();
    Ok(ReductionContext {
        u: u.clone(),
        n,
        m,
        vertices,
        nbar,
        ubar,
        corners,
        b,
        gen_maps,
        b_modules: ModuleRegistry::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::indec_projective;
    use crate::silting::tests::{s1_id, session};
    use crate::silting::SiltingObject;

    #[test]
    fn a2_context() {
        let s = session("a2");
        let u = SiltingObject::new([s1_id(&s)]);
        let ctx = build_context(&s, &u).unwrap();
        assert_eq!(ctx.b.dim(), 1);
        assert_eq!(ctx.vertices, vec![s.projective_id(0)]);
        assert_eq!(ctx.n.intersection(&ctx.m), u);
        let top = ctx.red(&s, &ctx.n).unwrap();
        assert_eq!(top, indec_projective(&ctx.b, 0));
        assert_eq!(ctx.red_alt(&s, &ctx.n).unwrap().dims(), &[1]);
        assert!(ctx.red(&s, &ctx.m).unwrap().is_zero());
        assert!(ctx.red_alt(&s, &ctx.m).unwrap().is_zero());
        assert_eq!(ctx.red(&s, &SiltingObject::new([0, 1])), Err(Error::SummandMissing(0)));
    }

    #[test]
    fn preconditions() {
        let s = session("a2");
        let zero = SiltingObject::new([]);
        assert!(matches!(build_context(&s, &zero), Err(Error::Invalid(_))));
        let a = crate::silting::regular_object(&s);
        assert!(matches!(build_context(&s, &a), Err(Error::AlreadySilting)));
    }

    #[test]
    fn a3_simple_projective_context() {
        // U = P_3 leaves a two-vertex B
        let s = session("a3");
        let u = SiltingObject::new([s.projective_id(2)]);
        let ctx = build_context(&s, &u).unwrap();
        assert_eq!(ctx.b.num_vertices(), 2);
        let top = ctx.red(&s, &ctx.n).unwrap();
        let regular = (0..2).fold(Representation::zero(&ctx.b), |acc, v| acc.direct_sum(&indec_projective(&ctx.b, v), &ctx.b));
        assert_eq!(top.dims(), regular.dims());
    }
}
