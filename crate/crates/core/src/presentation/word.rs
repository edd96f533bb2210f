use std::fmt;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn pos(generator: usize) -> Self {
        Self::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Self::new(generator, true)
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// Freely reduced word in a free group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn free_reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Builds from `(generator, exponent)` pairs, e.g. `[(0, 2), (1, -1)]` for `a^2 b^-1`.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        Self::free_reduce(powers.iter().flat_map(|&(g, e)| {
            std::iter::repeat_n(Letter::new(g, e < 0), e.unsigned_abs() as usize)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Self {
        Self::free_reduce(self.letters.iter().chain(&other.letters).copied())
    }

    /// Removes matching inverse letters from both ends.
    pub fn cyclically_reduce(&self) -> Self {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j - i >= 2 && l[i] == l[j - 1].inv() {
            i += 1;
            j -= 1;
        }
        Word {
            letters: l[i..j].to_vec(),
        }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.letters.len() < 2 || self.letters[0] != self.letters[self.letters.len() - 1].inv()
    }

    /// `w_1 ... w_k` rotated to start at position `k`.
    pub fn rotate(&self, k: usize) -> Self {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Self::free_reduce(letters)
    }

    /// Signed exponent sum of each generator, for `n` generators.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for l in &self.letters {
            v[l.generator] += l.sign();
        }
        v
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    /// Image under the substitution `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Self {
        let mut letters = Vec::new();
        for l in &self.letters {
            let img = &images[l.generator];
            if l.inverse {
                letters.extend(img.inverse().letters);
            } else {
                letters.extend_from_slice(&img.letters);
            }
        }
        Self::free_reduce(letters)
    }

    /// Renders with generator names, grouping runs as powers: `a^2 b^-1`.
    pub fn render(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let e = (j - i) as i64 * l.sign();
            let name = names
                .get(l.generator)
                .cloned()
                .unwrap_or_else(|| format!("x{}", l.generator));
            parts.push(if e == 1 { name } else { format!("{name}^{e}") });
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_generator().unwrap_or(0))
            .map(|i| format!("x{i}"))
            .collect();
        write!(f, "Word({})", self.render(&names))
    }
}

/// Free reduction as a standalone operation.
pub fn free_reduce(letters: &[Letter]) -> Word {
    Word::free_reduce(letters.iter().copied())
}
