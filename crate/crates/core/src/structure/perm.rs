//! Permutations of `0..k` and permutation groups held as a stabilizer chain
//! (Schreier–Sims).

use std::fmt;

use serde::{Deserialize, Serialize};

/// A permutation stored by images: `i -> images[i]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<usize>);

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_notation())
    }
}

impl Perm {
    pub fn identity(k: usize) -> Self {
        Self((0..k).collect())
    }

    /// `None` unless `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Self(images))
    }

    pub fn transposition(k: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(k);
        p.0.swap(i, j);
        p
    }

    /// The cycle `c[0] -> c[1] -> ... -> c[0]`.
    pub fn cycle(k: usize, c: &[usize]) -> Self {
        let mut p = Self::identity(k);
        for (i, &a) in c.iter().enumerate() {
            p.0[a] = c[(i + 1) % c.len()];
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.0.iter().enumerate().position(|(i, &j)| i != j)
    }

    /// Cycle notation with 1-based points, e.g. `(1 2 3)`; identity is `()`.
    pub fn cycle_notation(&self) -> String {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for s in 0..self.0.len() {
            if seen[s] || self.0[s] == s {
                continue;
            }
            out.push('(');
            let mut i = s;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&(i + 1).to_string());
                i = self.0[i];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    /// `reps[p]` maps the base point to `p`; `inv[p]` is its inverse.
    reps: Vec<Option<Perm>>,
    inv: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(k: usize, base: usize) -> Self {
        let mut reps = vec![None; k];
        reps[base] = Some(Perm::identity(k));
        Self { base, gens: Vec::new(), inv: reps.clone(), reps, orbit: vec![base] }
    }

    fn rebuild_orbit(&mut self) {
        let k = self.reps.len();
        self.reps = vec![None; k];
        self.reps[self.base] = Some(Perm::identity(k));
        self.orbit = vec![self.base];
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for s in &self.gens {
                let q = s.apply(p);
                if self.reps[q].is_none() {
                    self.reps[q] = Some(s.compose(self.reps[p].as_ref().unwrap()));
                    self.orbit.push(q);
                }
            }
        }
        self.inv = self.reps.iter().map(|r| r.as_ref().map(Perm::inverse)).collect();
    }
}

/// A subgroup of `S_k` given by generators, with a base and strong
/// generating set for membership and order queries.
#[derive(Clone, Debug)]
pub struct PermGroup {
    k: usize,
    generators: Vec<Perm>,
    chain: Vec<Level>,
}

impl PermGroup {
    pub fn trivial(k: usize) -> Self {
        Self { k, generators: Vec::new(), chain: Vec::new() }
    }

    pub fn from_generators(k: usize, gens: impl IntoIterator<Item = Perm>) -> Self {
        let mut g = Self::trivial(k);
        for p in gens {
            g.insert(p);
        }
        g
    }

    pub fn symmetric(k: usize) -> Self {
        Self::from_generators(k, (1..k).map(|i| Perm::transposition(k, i - 1, i)))
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// The generators that were actually needed (non-members at insertion
    /// time), in insertion order.
    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.chain.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn is_symmetric(&self) -> bool {
        self.order() == (1..=self.k as u128).product::<u128>()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.k && self.sift(p.clone(), 0).0.is_identity()
    }

    /// Adds `p` to the group; returns whether the group grew.
    pub fn insert(&mut self, p: Perm) -> bool {
        assert_eq!(p.degree(), self.k, "permutation degree mismatch");
        let (residue, _) = self.sift(p.clone(), 0);
        if residue.is_identity() {
            return false;
        }
        self.generators.push(p);
        self.add_generator(0, residue);
        true
    }

    fn sift(&self, mut h: Perm, from: usize) -> (Perm, usize) {
        for (i, level) in self.chain.iter().enumerate().skip(from) {
            match &level.inv[h.apply(level.base)] {
                Some(u_inv) => h = u_inv.compose(&h),
                None => return (h, i),
            }
        }
        (h, self.chain.len())
    }

    /// `g` fixes the base points of all levels before `level`.
    fn add_generator(&mut self, level: usize, g: Perm) {
        if level == self.chain.len() {
            let base = g.first_moved().expect("non-identity generator");
            self.chain.push(Level::new(self.k, base));
        }
        self.chain[level].gens.push(g);
        self.chain[level].rebuild_orbit();
        let lvl = self.chain[level].clone();
        for &p in &lvl.orbit {
            let u = lvl.reps[p].as_ref().unwrap();
            for s in &lvl.gens {
                let q = s.apply(p);
                let schreier = lvl.inv[q].as_ref().unwrap().compose(&s.compose(u));
                if schreier.is_identity() {
                    continue;
                }
                let (h, _) = self.sift(schreier, level + 1);
                if !h.is_identity() {
                    self.add_generator(level + 1, h);
                }
            }
        }
    }

    /// Every element, for small groups.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.k)];
        for level in self.chain.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &p in &level.orbit {
                let u = level.reps[p].as_ref().unwrap();
                next.extend(out.iter().map(|h| u.compose(h)));
            }
            out = next;
        }
        out.sort();
        out
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.order() == other.order() && other.generators.iter().all(|p| self.contains(p))
    }
}

impl Eq for PermGroup {}

impl Serialize for PermGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PermGroup", 3)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("order", &self.order())?;
        let gens: Vec<String> = self.generators.iter().map(Perm::cycle_notation).collect();
        st.serialize_field("generators", &gens)?;
        st.end()
    }
}
