use std::collections::HashMap;

use crate::exactlinalg::{PrimeField, QuotientSpace};
use crate::{Error, Result};

use super::{Algebra, BasisElement, Presentation, Sparse};

/// Path-count ceiling; beyond it the quiver is treated as not finite
/// dimensional rather than exhausting memory.
const MAX_PATHS: usize = 50_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    /// Validates labels and endpoints. Arrows are `(label, source, target)`
    /// given by vertex label.
    pub fn new(vertices: Vec<String>, arrows: &[(String, String, String)]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Invalid("quiver has no vertices".into()));
        }
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate vertex label {v:?}")));
            }
        }
        let mut seen = HashMap::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (label, s, t) in arrows {
            if !is_arrow_label(label) {
                return Err(Error::Invalid(format!(
                    "arrow label {label:?} must start with a letter and contain only letters, digits, '_' or '\\''"
                )));
            }
            if seen.insert(label.clone(), ()).is_some() {
                return Err(Error::Invalid(format!("duplicate arrow label {label:?}")));
            }
            let lookup = |v: &String| {
                index
                    .get(v)
                    .copied()
                    .ok_or_else(|| Error::Invalid(format!("arrow {label:?} uses unknown vertex {v:?}")))
            };
            out.push(Arrow {
                label: label.clone(),
                source: lookup(s)?,
                target: lookup(t)?,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
        })
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }
}

fn is_arrow_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// A linear combination of parallel paths. Paths are arrow indices in
/// travel order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub text: String,
    pub terms: Vec<(u32, Vec<usize>)>,
    pub source: usize,
    pub target: usize,
}

/// Parses `±coeff path ± ...` where a path is `*`-joined arrow labels.
/// Whitespace is ignored. Column numbers in errors are 1-based offsets into
/// `text`.
pub fn parse_relation(q: &Quiver, field: PrimeField, text: &str) -> Result<Relation> {
    let err = |col: usize, msg: String| Error::Parse {
        line: 1,
        column: col + 1,
        message: msg,
    };
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(err(0, "empty relation".into()));
    }
    let mut pos = 0;
    let mut collected: Vec<(u32, Vec<usize>)> = Vec::new();
    while pos < chars.len() {
        let mut negative = false;
        let mut saw_sign = false;
        while pos < chars.len() && (chars[pos].1 == '+' || chars[pos].1 == '-') {
            negative ^= chars[pos].1 == '-';
            saw_sign = true;
            pos += 1;
        }
        if !saw_sign && !collected.is_empty() {
            return Err(err(chars[pos].0, "expected '+' or '-' between terms".into()));
        }
        let term_col = chars.get(pos).map_or(text.len(), |c| c.0);
        let mut coeff: u64 = 1;
        let digits_start = pos;
        while pos < chars.len() && chars[pos].1.is_ascii_digit() {
            pos += 1;
        }
        if pos > digits_start {
            let s: String = chars[digits_start..pos].iter().map(|c| c.1).collect();
            coeff = s
                .parse::<u64>()
                .map_err(|_| err(term_col, format!("bad coefficient {s:?}")))?
                % field.modulus() as u64;
            if pos < chars.len() && chars[pos].1 == '*' {
                pos += 1;
            }
        }
        let mut path = Vec::new();
        loop {
            let start = pos;
            while pos < chars.len() && (chars[pos].1.is_ascii_alphanumeric() || chars[pos].1 == '_' || chars[pos].1 == '\'') {
                pos += 1;
            }
            if pos == start {
                let col = chars.get(pos).map_or(text.len(), |c| c.0);
                if path.is_empty() {
                    return Err(Error::InadmissibleRelation {
                        relation: text.to_string(),
                        reason: format!("term at column {} has no path (length 0)", term_col + 1),
                    });
                }
                return Err(err(col, "expected an arrow label".into()));
            }
            let label: String = chars[start..pos].iter().map(|c| c.1).collect();
            let a = q
                .arrow_index(&label)
                .ok_or_else(|| err(chars[start].0, format!("unknown arrow {label:?}")))?;
            path.push(a);
            if pos < chars.len() && chars[pos].1 == '*' {
                pos += 1;
            } else {
                break;
            }
        }
        for w in path.windows(2) {
            if q.arrows[w[0]].target != q.arrows[w[1]].source {
                return Err(Error::InadmissibleRelation {
                    relation: text.to_string(),
                    reason: format!(
                        "{} does not end where {} starts",
                        q.arrows[w[0]].label, q.arrows[w[1]].label
                    ),
                });
            }
        }
        if path.len() < 2 {
            return Err(Error::InadmissibleRelation {
                relation: text.to_string(),
                reason: format!("path {:?} has length {} < 2", q.arrows[path[0]].label, path.len()),
            });
        }
        let c = if negative {
            field.neg(coeff as u32)
        } else {
            coeff as u32
        };
        match collected.iter_mut().find(|(_, p)| *p == path) {
            Some(entry) => entry.0 = field.add(entry.0, c),
            None => collected.push((c, path)),
        }
    }
    collected.retain(|(c, _)| *c != 0);
    let endpoints = |p: &Vec<usize>| (q.arrows[p[0]].source, q.arrows[*p.last().unwrap()].target);
    let (source, target) = collected.first().map(|(_, p)| endpoints(p)).unwrap_or((0, 0));
    if collected.iter().any(|(_, p)| endpoints(p) != (source, target)) {
        return Err(Error::InadmissibleRelation {
            relation: text.to_string(),
            reason: "terms are not parallel paths".into(),
        });
    }
    Ok(Relation {
        text: text.to_string(),
        terms: collected,
        source,
        target,
    })
}

/// Normal forms for the paths of one `(source, target)` block of `kQ/(I + J^{L+1})`.
struct Block {
    columns: HashMap<Vec<usize>, usize>,
    quotient: QuotientSpace,
    /// Paths of the free columns, aligned with `quotient` coordinates.
    free_paths: Vec<Vec<usize>>,
}

struct Truncation {
    len: usize,
    blocks: HashMap<(usize, usize), Block>,
    dim: usize,
}

fn truncate(q: &Quiver, field: PrimeField, rels: &[Relation], len: usize) -> Result<Truncation> {
    let n = q.vertices.len();
    // all nontrivial paths of length <= len, grouped by endpoints
    let mut by_len: Vec<Vec<Vec<usize>>> = vec![Vec::new(); len + 1];
    by_len[1] = (0..q.arrows.len()).map(|a| vec![a]).collect();
    let mut total = by_len[1].len();
    for l in 2..=len {
        let mut next = Vec::new();
        for p in &by_len[l - 1] {
            let end = q.arrows[*p.last().unwrap()].target;
            for (a, arrow) in q.arrows.iter().enumerate() {
                if arrow.source == end {
                    let mut np = p.clone();
                    np.push(a);
                    next.push(np);
                }
            }
        }
        total += next.len();
        if total > MAX_PATHS {
            return Err(Error::NotFiniteDimensional { max_len: l });
        }
        by_len[l] = next;
    }
    let ends = |p: &[usize]| (q.arrows[p[0]].source, q.arrows[*p.last().unwrap()].target);
    let mut cols: HashMap<(usize, usize), Vec<Vec<usize>>> = HashMap::new();
    for l in (1..=len).rev() {
        for p in &by_len[l] {
            cols.entry(ends(p)).or_default().push(p.clone());
        }
    }
    // ideal generators p * r * q truncated at length len
    let mut gens: HashMap<(usize, usize), Vec<Vec<(u32, Vec<usize>)>>> = HashMap::new();
    let paths_into = |v: usize| -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for l in 1..=len {
            out.extend(by_len[l].iter().filter(|p| ends(p).1 == v).cloned());
        }
        out
    };
    let paths_from = |v: usize| -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for l in 1..=len {
            out.extend(by_len[l].iter().filter(|p| ends(p).0 == v).cloned());
        }
        out
    };
    for r in rels {
        if r.terms.is_empty() {
            continue;
        }
        let min_len = r.terms.iter().map(|(_, p)| p.len()).min().unwrap();
        for pre in paths_into(r.source) {
            for post in paths_from(r.target) {
                if pre.len() + post.len() + min_len > len {
                    continue;
                }
                let mut elem = Vec::new();
                for (c, t) in &r.terms {
                    let mut w = pre.clone();
                    w.extend_from_slice(t);
                    w.extend_from_slice(&post);
                    if w.len() <= len {
                        elem.push((*c, w));
                    }
                }
                let s = pre.first().map_or(r.source, |&a| q.arrows[a].source);
                let t = post.last().map_or(r.target, |&a| q.arrows[a].target);
                gens.entry((s, t)).or_default().push(elem);
            }
        }
    }
    let mut blocks = HashMap::new();
    let mut dim = n;
    for (key, paths) in cols {
        let columns: HashMap<Vec<usize>, usize> =
            paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let vecs: Vec<Vec<u32>> = gens
            .get(&key)
            .map(|gs| {
                gs.iter()
                    .map(|elem| {
                        let mut v = vec![0u32; paths.len()];
                        for (c, w) in elem {
                            let j = columns[w];
                            v[j] = field.add(v[j], *c);
                        }
                        v
                    })
                    .collect()
            })
            .unwrap_or_default();
        let quotient = QuotientSpace::new(field, paths.len(), &vecs);
        let free_paths: Vec<Vec<usize>> = quotient.free().iter().map(|&j| paths[j].clone()).collect();
        debug_assert_eq!(free_paths.len(), quotient.dim());
        dim += quotient.dim();
        blocks.insert(
            key,
            Block {
                columns,
                quotient,
                free_paths,
            },
        );
    }
    Ok(Truncation { len, blocks, dim })
}

pub(super) fn build_from_quiver(
    field: PrimeField,
    name: String,
    q: &Quiver,
    rels: &[Relation],
    max_len: usize,
) -> Result<Algebra> {
    if max_len < 1 {
        return Err(Error::Invalid("max_path_len must be at least 1".into()));
    }
    let n = q.vertices.len();
    let mut dims = vec![n];
    let mut found = None;
    for len in 1..=max_len {
        let t = truncate(q, field, rels, len)?;
        dims.push(t.dim);
        if len >= 2 && dims[len] == dims[len - 1] && dims[len - 1] == dims[len - 2] {
            found = Some(t);
            break;
        }
    }
    let trunc = found.ok_or(Error::NotFiniteDimensional { max_len })?;
    assemble_quiver_algebra(field, name, q, rels, trunc)
}

fn assemble_quiver_algebra(
    field: PrimeField,
    name: String,
    q: &Quiver,
    rels: &[Relation],
    trunc: Truncation,
) -> Result<Algebra> {
    let n = q.vertices.len();
    let mut paths: Vec<Vec<usize>> = trunc
        .blocks
        .values()
        .flat_map(|b| b.free_paths.iter().cloned())
        .collect();
    paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut basis: Vec<BasisElement> = q
        .vertices
        .iter()
        .enumerate()
        .map(|(v, l)| BasisElement {
            source: v,
            target: v,
            label: format!("e_{l}"),
        })
        .collect();
    let mut path_index: HashMap<Vec<usize>, usize> = HashMap::new();
    for p in &paths {
        path_index.insert(p.clone(), basis.len());
        basis.push(BasisElement {
            source: q.arrows[p[0]].source,
            target: q.arrows[*p.last().unwrap()].target,
            label: p.iter().map(|&a| q.arrows[a].label.as_str()).collect::<Vec<_>>().join("*"),
        });
    }
    let mut labels = std::collections::HashSet::new();
    for b in &basis {
        if !labels.insert(b.label.clone()) {
            return Err(Error::Invalid(format!("basis label {:?} is ambiguous", b.label)));
        }
    }
    let d = basis.len();
    let reduce = |w: &[usize]| -> Sparse {
        if w.len() > trunc.len {
            return Vec::new();
        }
        let key = (q.arrows[w[0]].source, q.arrows[*w.last().unwrap()].target);
        let Some(block) = trunc.blocks.get(&key) else {
            return Vec::new();
        };
        let mut e = vec![0u32; block.columns.len()];
        e[block.columns[w]] = 1;
        let coords = block.quotient.coords(&e);
        let mut out: Sparse = coords
            .iter()
            .zip(&block.free_paths)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, p)| (path_index[p], c))
            .collect();
        out.sort_unstable();
        out
    };
    let mut table = vec![vec![Vec::new(); d]; d];
    for x in 0..d {
        for y in 0..d {
            if basis[x].source != basis[y].target {
                continue;
            }
            table[x][y] = match (x < n, y < n) {
                (true, _) => vec![(y, 1)],
                (false, true) => vec![(x, 1)],
                (false, false) => {
                    let mut w = paths[y - n].clone();
                    w.extend_from_slice(&paths[x - n]);
                    reduce(&w)
                }
            };
        }
    }
    let generators: Vec<usize> = (0..q.arrows.len())
        .map(|a| path_index.get(&vec![a]).copied().expect("arrows survive admissible relations"))
        .collect();
    let gen_pos: HashMap<usize, usize> = generators.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut words = vec![Vec::new(); d];
    for (k, p) in paths.iter().enumerate() {
        words[n + k] = p.iter().rev().map(|a| gen_pos[&path_index[&vec![*a]]]).collect();
    }
    Algebra::assemble(
        field,
        name,
        q.vertices.clone(),
        basis,
        table,
        generators,
        words,
        Presentation::Quiver {
            quiver: q.clone(),
            relations: rels.to_vec(),
            stable_len: trunc.len,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::DEFAULT_PRIME;

    fn field() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    fn a3() -> Quiver {
        Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            &[
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "3".into()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn relation_grammar() {
        let q = a3();
        let r = parse_relation(&q, field(), " 2 a * b ").unwrap();
        assert_eq!(r.terms, vec![(2, vec![0, 1])]);
        let r = parse_relation(&q, field(), "-a*b").unwrap();
        assert_eq!(r.terms, vec![(DEFAULT_PRIME - 1, vec![0, 1])]);
        assert!(matches!(
            parse_relation(&q, field(), "a"),
            Err(Error::InadmissibleRelation { .. })
        ));
        assert!(matches!(
            parse_relation(&q, field(), "b*a"),
            Err(Error::InadmissibleRelation { .. })
        ));
        assert!(matches!(parse_relation(&q, field(), "a*c"), Err(Error::Parse { .. })));
    }

    #[test]
    fn a3_dimensions() {
        let q = a3();
        let free = build_from_quiver(field(), "A3".into(), &q, &[], 32).unwrap();
        assert_eq!(free.dim(), 6);
        let rel = parse_relation(&q, field(), "a*b").unwrap();
        let cut = build_from_quiver(field(), "A3/ab".into(), &q, &[rel], 32).unwrap();
        assert_eq!(cut.dim(), 5);
        assert_eq!(cut.loewy_length(), 2);
    }

    #[test]
    fn loop_without_relation_is_infinite() {
        let q = Quiver::new(vec!["1".into()], &[("x".into(), "1".into(), "1".into())]).unwrap();
        assert_eq!(
            build_from_quiver(field(), String::new(), &q, &[], 8).unwrap_err(),
            Error::NotFiniteDimensional { max_len: 8 }
        );
        let rel = parse_relation(&q, field(), "x*x*x").unwrap();
        let a = build_from_quiver(field(), String::new(), &q, &[rel], 8).unwrap();
        assert_eq!(a.dim(), 3);
    }

    #[test]
    fn commutativity_relation_identifies_paths() {
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into(), "4".into()],
            &[
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "4".into()),
                ("c".into(), "1".into(), "3".into()),
                ("d".into(), "3".into(), "4".into()),
            ],
        )
        .unwrap();
        let rel = parse_relation(&q, field(), "a*b - c*d").unwrap();
        let a = build_from_quiver(field(), String::new(), &q, &[rel], 32).unwrap();
        assert_eq!(a.dim(), 9);
        // b·a and d·c are the same basis element
        let ab = a.mul_basis(a.basis_index("b").unwrap(), a.basis_index("a").unwrap()).clone();
        let cd = a.mul_basis(a.basis_index("d").unwrap(), a.basis_index("c").unwrap()).clone();
        assert_eq!(ab, cd);
    }
}
