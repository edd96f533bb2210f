//! Reidemeister-Schreier rewriting for kernels of finite abelian quotients.

use std::collections::VecDeque;

use crate::presentation::{FiniteAbelianQuotient, Letter, Presentation, Word};

/// How the Schreier transversal is grown over the coset graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TransversalStrategy {
    /// Breadth-first from the identity; generators in order, positive letters first.
    #[default]
    BreadthFirst,
    /// Depth-first with the same letter order.
    DepthFirst,
}

/// Right action of the generators on the cosets `Gamma` together with a
/// prefix-closed transversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    /// `action[c][g]` is the coset reached from `c` by generator `g`.
    pub action: Vec<Vec<usize>>,
    /// `inverse_action[c][g]` is the coset reached by `g^-1`.
    pub inverse_action: Vec<Vec<usize>>,
    /// Representative word of each coset.
    pub transversal: Vec<Word>,
}

impl CosetTable {
    pub fn new(q: &FiniteAbelianQuotient, strategy: TransversalStrategy) -> Self {
        let n = q.order() as usize;
        let gens = q.images().len();
        let mut action = vec![vec![0; gens]; n];
        let mut inverse_action = vec![vec![0; gens]; n];
        for c in 0..n {
            let x = q.element(c);
            for (g, img) in q.images().iter().enumerate() {
                action[c][g] = q.index_of(&q.add(&x, img));
                inverse_action[c][g] = q.index_of(&q.sub(&x, img));
            }
        }
        let letters: Vec<Letter> = (0..gens)
            .map(Letter::pos)
            .chain((0..gens).map(Letter::neg))
            .collect();
        let step = |c: usize, l: Letter| {
            if l.inverse {
                inverse_action[c][l.generator]
            } else {
                action[c][l.generator]
            }
        };
        let mut transversal: Vec<Option<Vec<Letter>>> = vec![None; n];
        transversal[0] = Some(Vec::new());
        match strategy {
            TransversalStrategy::BreadthFirst => {
                let mut queue = VecDeque::from([0usize]);
                while let Some(c) = queue.pop_front() {
                    for &l in &letters {
                        let d = step(c, l);
                        if transversal[d].is_none() {
                            let mut w = transversal[c].clone().expect("visited");
                            w.push(l);
                            transversal[d] = Some(w);
                            queue.push_back(d);
                        }
                    }
                }
            }
            TransversalStrategy::DepthFirst => {
                let mut stack = vec![(0usize, 0usize)];
                while let Some((c, next)) = stack.pop() {
                    if next == letters.len() {
                        continue;
                    }
                    stack.push((c, next + 1));
                    let d = step(c, letters[next]);
                    if transversal[d].is_none() {
                        let mut w = transversal[c].clone().expect("visited");
                        w.push(letters[next]);
                        transversal[d] = Some(w);
                        stack.push((d, 0));
                    }
                }
            }
        }
        let transversal = transversal
            .into_iter()
            .map(|w| Word::free_reduce(w.expect("surjective quotient reaches every coset")))
            .collect();
        CosetTable {
            action,
            inverse_action,
            transversal,
        }
    }

    pub fn coset_count(&self) -> usize {
        self.action.len()
    }

    /// Coset reached from `start` by reading `w`.
    pub fn trace(&self, start: usize, w: &Word) -> usize {
        w.letters().iter().fold(start, |c, l| self.step(c, *l))
    }

    fn step(&self, c: usize, l: Letter) -> usize {
        if l.inverse {
            self.inverse_action[c][l.generator]
        } else {
            self.action[c][l.generator]
        }
    }
}

/// Presentation of `ker(alpha)` with the data used to build it.
#[derive(Debug, Clone)]
pub struct SubgroupPresentation {
    pub presentation: Presentation,
    pub table: CosetTable,
    /// For each subgroup generator: `(coset t, generator x, gamma(t, x))` as a
    /// word in the original generators.
    pub schreier_generators: Vec<(usize, usize, Word)>,
}

/// Reidemeister-Schreier presentation of the kernel of `q`, using a
/// breadth-first Schreier transversal.
pub fn reidemeister_schreier(p: &Presentation, q: &FiniteAbelianQuotient) -> SubgroupPresentation {
    reidemeister_schreier_with(p, q, TransversalStrategy::BreadthFirst)
}

pub fn reidemeister_schreier_with(
    p: &Presentation,
    q: &FiniteAbelianQuotient,
    strategy: TransversalStrategy,
) -> SubgroupPresentation {
    let table = CosetTable::new(q, strategy);
    let n = table.coset_count();
    let r = p.generator_count();

    // gamma(t, x) = t x (rep(tx))^-1, numbered when nontrivial.
    let mut symbol = vec![vec![None; r]; n];
    let mut schreier_generators = Vec::new();
    let mut names = Vec::new();
    for c in 0..n {
        for x in 0..r {
            let target = table.action[c][x];
            let gamma = table.transversal[c]
                .concat(&Word::free_reduce([Letter::pos(x)]))
                .concat(&table.transversal[target].inverse());
            if !gamma.is_empty() {
                symbol[c][x] = Some(schreier_generators.len());
                names.push(format!("{}_{c}", p.generators()[x]));
                schreier_generators.push((c, x, gamma));
            }
        }
    }

    // tau(w) read from coset 0.
    let rewrite = |w: &[Letter]| -> Word {
        let mut c = 0;
        let mut out = Vec::new();
        for &l in w {
            if l.inverse {
                let prev = table.inverse_action[c][l.generator];
                if let Some(s) = symbol[prev][l.generator] {
                    out.push(Letter::neg(s));
                }
                c = prev;
            } else {
                if let Some(s) = symbol[c][l.generator] {
                    out.push(Letter::pos(s));
                }
                c = table.action[c][l.generator];
            }
        }
        Word::free_reduce(out)
    };

    let mut relators = Vec::with_capacity(n * p.relators().len());
    for t in &table.transversal {
        for rel in p.relators() {
            // tau(t r t^-1), literally
            let mut letters = t.letters().to_vec();
            letters.extend_from_slice(rel.letters());
            letters.extend(t.inverse().letters().iter().copied());
            relators.push(rewrite(&letters));
        }
    }
    let presentation =
        Presentation::new(names, relators).expect("Schreier generator names are distinct");
    SubgroupPresentation {
        presentation,
        table,
        schreier_generators,
    }
}
