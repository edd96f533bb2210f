use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::presentation::{FiniteAbelianQuotient, Presentation};

/// Largest vertex count searched exhaustively unless overridden.
pub const DEFAULT_CHEEGER_BOUND: u64 = 20;

/// Coset graph of `Gamma` with one edge `(x, x + alpha(s))` per vertex and generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetGraph {
    pub vertices: usize,
    pub generators: usize,
    /// `(source, target, generator)`, loops included.
    pub edges: Vec<(usize, usize, usize)>,
}

impl CosetGraph {
    pub fn new(q: &FiniteAbelianQuotient) -> Self {
        let vertices = q.order() as usize;
        let generators = q.images().len();
        let mut edges = Vec::with_capacity(vertices * generators);
        for v in 0..vertices {
            let x = q.element(v);
            for (s, img) in q.images().iter().enumerate() {
                edges.push((v, q.index_of(&q.add(&x, img)), s));
            }
        }
        CosetGraph {
            vertices,
            generators,
            edges,
        }
    }

    /// Degree counting both edge directions; a loop counts twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b, _)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    /// Number of edges with exactly one endpoint in `set`.
    pub fn boundary(&self, set: &[bool]) -> usize {
        self.edges.iter().filter(|&&(a, b, _)| set[a] != set[b]).count()
    }
}

/// Exact `min |dA| / |A|` over `0 < |A| <= |V| / 2`, by exhaustive search.
pub fn cheeger_constant(p: &Presentation, q: &FiniteAbelianQuotient, bound: u64) -> Result<BigRational> {
    if q.images().len() != p.generator_count() {
        return Err(Error::InvalidQuotient(format!(
            "{} generator images for {} generators",
            q.images().len(),
            p.generator_count()
        )));
    }
    let n = q.order();
    if n > bound {
        return Err(Error::CheegerBound { order: n, bound });
    }
    if n < 2 {
        return Err(Error::DegenerateGraph);
    }
    if n > 63 {
        return Err(Error::CheegerBound { order: n, bound: 63 });
    }
    let graph = CosetGraph::new(q);
    let n = n as usize;
    // Non-loop neighbors with multiplicity.
    let mut adjacent: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b, _) in &graph.edges {
        if a != b {
            adjacent[a].push(b);
            adjacent[b].push(a);
        }
    }

    // Gray-code walk: step i toggles the lowest set bit of i.
    let mut inside = vec![false; n];
    let mut size = 0usize;
    let mut boundary: i64 = 0;
    let mut best: Option<(i64, usize)> = None;
    for i in 1u64..(1u64 << n) {
        let v = i.trailing_zeros() as usize;
        let crossing_before = adjacent[v].iter().filter(|&&w| inside[w] != inside[v]).count() as i64;
        let deg = adjacent[v].len() as i64;
        inside[v] = !inside[v];
        if inside[v] {
            size += 1;
        } else {
            size -= 1;
        }
        boundary += deg - 2 * crossing_before;
        if size > 0 && 2 * size <= n {
            let better = match best {
                None => true,
                Some((b, s)) => boundary * (s as i64) < b * (size as i64),
            };
            if better {
                best = Some((boundary, size));
            }
        }
    }
    let (b, s) = best.expect("at least one admissible subset");
    Ok(BigRational::new(BigInt::from(b), BigInt::from(s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::make_quotient;

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn two_vertices() {
        let p: Presentation = "< a, b | >".parse().unwrap();
        let q = make_quotient(&p, &[vec![1], vec![0]], &[2]).unwrap();
        assert_eq!(cheeger_constant(&p, &q, 20).unwrap(), ratio(2, 1));
    }

    #[test]
    fn cycles_match_path_cut() {
        let p: Presentation = "< a, b, c | >".parse().unwrap();
        for n in 3..=12i64 {
            let q = make_quotient(&p, &[vec![1], vec![0], vec![0]], &[n as u64]).unwrap();
            assert_eq!(cheeger_constant(&p, &q, 20).unwrap(), ratio(2, n / 2), "n = {n}");
        }
    }

    #[test]
    fn regular_degree() {
        let p: Presentation = "< a, b | >".parse().unwrap();
        let q = make_quotient(&p, &[vec![1, 0], vec![1, 1]], &[2, 4]).unwrap();
        let g = CosetGraph::new(&q);
        assert!((0..g.vertices).all(|v| g.degree(v) == 4));
    }

    #[test]
    fn brute_force_agrees() {
        let p: Presentation = "< a, b | >".parse().unwrap();
        let q = make_quotient(&p, &[vec![1, 0], vec![1, 1]], &[2, 4]).unwrap();
        let g = CosetGraph::new(&q);
        let n = g.vertices;
        let mut best: Option<BigRational> = None;
        for mask in 1u32..(1 << n) {
            let set: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
            let size = set.iter().filter(|&&x| x).count();
            if 2 * size > n {
                continue;
            }
            let h = ratio(g.boundary(&set) as i64, size as i64);
            if best.as_ref().is_none_or(|b| &h < b) {
                best = Some(h);
            }
        }
        assert_eq!(cheeger_constant(&p, &q, 20).unwrap(), best.unwrap());
    }

    #[test]
    fn errors() {
        let p: Presentation = "< a, b | >".parse().unwrap();
        let q = make_quotient(&p, &[vec![1], vec![0]], &[1]).unwrap();
        assert_eq!(cheeger_constant(&p, &q, 20), Err(Error::DegenerateGraph));
        let q = make_quotient(&p, &[vec![1], vec![0]], &[21]).unwrap();
        assert_eq!(
            cheeger_constant(&p, &q, 20),
            Err(Error::CheegerBound { order: 21, bound: 20 })
        );
    }
}
