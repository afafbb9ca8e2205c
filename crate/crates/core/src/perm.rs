//! Permutations of `[m]`, their left action on point configurations, and
//! sign-balanced subgroups.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};

/// Largest group `make_group` will enumerate.
pub const GROUP_CAP: usize = 10_000;

/// A bijection on `{0, ..., m-1}` with its sign.
///
/// Documentation uses 1-based cycle notation; `map[i]` is the 0-based image
/// of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
    sign: i8,
}

impl Permutation {
    /// Builds a permutation from its 0-based one-line form.
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let m = map.len();
        let mut seen = vec![false; m];
        for &v in &map {
            if v >= m || seen[v] {
                return Err(Error::input(format!("{map:?} is not a bijection on [{m}]")));
            }
            seen[v] = true;
        }
        let sign = parity(&map);
        Ok(Permutation { map, sign })
    }

    pub fn identity(m: usize) -> Self {
        Permutation { map: (0..m).collect(), sign: 1 }
    }

    /// Builds a permutation of `[m]` from 1-based disjoint cycles, so
    /// `from_cycles(4, &[&[1, 4], &[2, 3]])` is `(1 4)(2 3)`.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut map: Vec<usize> = (0..m).collect();
        let mut used = vec![false; m];
        for cycle in cycles {
            for &c in cycle.iter() {
                if c == 0 || c > m || used[c - 1] {
                    return Err(Error::input(format!("bad cycle entry {c} for order {m}")));
                }
                used[c - 1] = true;
            }
            for k in 0..cycle.len() {
                map[cycle[k] - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Permutation::new(map)
    }

    pub fn order(&self) -> usize {
        self.map.len()
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// 0-based one-line form.
    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// Image of `i` (0-based).
    pub fn image(&self, i: usize) -> usize {
        self.map[i]
    }

    /// The composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.order(), other.order(), "composing permutations of different order");
        let map = other.map.iter().map(|&i| self.map[i]).collect();
        Permutation { map, sign: self.sign * other.sign }
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0; self.order()];
        for (i, &v) in self.map.iter().enumerate() {
            map[v] = i;
        }
        Permutation { map, sign: self.sign }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Left action on a sequence of columns: output position `σ(i)` receives
    /// input column `i`, i.e. output column `j` is input column `σ⁻¹(j)`.
    pub fn act<T: Clone>(&self, cols: &[T]) -> Vec<T> {
        let mut out = cols.to_vec();
        for (i, c) in cols.iter().enumerate() {
            out[self.map[i]] = c.clone();
        }
        out
    }

    /// The positions `σ⁻¹(0), ..., σ⁻¹(m-1)`: column `j` of the acted
    /// configuration is input column `pull()[j]`.
    pub fn pull(&self) -> Vec<usize> {
        self.inverse().map
    }
}

fn parity(map: &[usize]) -> i8 {
    let mut seen = vec![false; map.len()];
    let mut sign = 1i8;
    for start in 0..map.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = map[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Applies `sigma` to the columns of a `d x m` configuration.
///
/// ```
/// use symrc::{apply_perm, Permutation};
/// let s = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
/// let w = vec![vec![1.0], vec![2.0], vec![3.0]];
/// assert_eq!(apply_perm(&s, &w).unwrap(), vec![vec![3.0], vec![1.0], vec![2.0]]);
/// ```
pub fn apply_perm(sigma: &Permutation, w: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    if sigma.order() != w.len() {
        return Err(Error::input(format!(
            "permutation of order {} applied to {} columns",
            sigma.order(),
            w.len()
        )));
    }
    Ok(sigma.act(w))
}

/// A subgroup of `S_m` with equally many even and odd elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedGroup {
    m: usize,
    elements: Vec<Permutation>,
}

impl SignedGroup {
    pub fn order(&self) -> usize {
        self.m
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// Number of group elements `|H|`.
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// `⟨(1 2)⟩` in `S_2`.
    pub fn h_tau() -> Self {
        make_group(&[Permutation::from_cycles(2, &[&[1, 2]]).unwrap()], 2).unwrap()
    }

    /// `⟨(1 4), (2 3)⟩` acting on the first four of `m >= 4` points.
    pub fn h_taustar(m: usize) -> Self {
        assert!(m >= 4, "H_tau* needs at least four points");
        let gens = [
            Permutation::from_cycles(m, &[&[1, 4]]).unwrap(),
            Permutation::from_cycles(m, &[&[2, 3]]).unwrap(),
        ];
        make_group(&gens, m).unwrap()
    }

    /// The same group with `extra` fixed points appended.
    pub fn extend(&self, extra: usize) -> Self {
        let m = self.m + extra;
        let elements = self
            .elements
            .iter()
            .map(|p| {
                let mut map = p.map.clone();
                map.extend(self.m..m);
                Permutation { map, sign: p.sign }
            })
            .collect();
        SignedGroup { m, elements }
    }

    /// Direct product acting on disjoint point sets, `self` on the first
    /// `self.order()` points and `other` on the rest. Signs multiply.
    pub fn product(&self, other: &SignedGroup) -> Self {
        let m = self.m + other.m;
        let mut elements = Vec::with_capacity(self.size() * other.size());
        for a in &self.elements {
            for b in &other.elements {
                let mut map = a.map.clone();
                map.extend(b.map.iter().map(|&v| v + self.m));
                elements.push(Permutation { map, sign: a.sign * b.sign });
            }
        }
        SignedGroup { m, elements }
    }
}

/// Generates the subgroup of `S_m` spanned by `generators` and checks that
/// it has as many odd as even elements.
///
/// ```
/// use symrc::{make_group, Permutation};
/// let g = make_group(&[Permutation::from_cycles(4, &[&[1, 4]]).unwrap(),
///                      Permutation::from_cycles(4, &[&[2, 3]]).unwrap()], 4).unwrap();
/// assert_eq!(g.size(), 4);
/// ```
pub fn make_group(generators: &[Permutation], m: usize) -> Result<SignedGroup> {
    if let Some(g) = generators.iter().find(|g| g.order() != m) {
        return Err(Error::input(format!("generator of order {} in a group of order {m}", g.order())));
    }
    let id = Permutation::identity(m);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut elements = vec![];
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        if !seen.insert(p.map.clone()) {
            continue;
        }
        if seen.len() > GROUP_CAP {
            return Err(Error::capacity(format!("group exceeds {GROUP_CAP} elements")));
        }
        for g in generators {
            let q = g.compose(&p);
            if !seen.contains(&q.map) {
                queue.push_back(q);
            }
        }
        elements.push(p);
    }
    let even = elements.iter().filter(|p| p.sign > 0).count();
    let odd = elements.len() - even;
    if even != odd {
        return Err(Error::validation(format!(
            "group is not sign balanced: {even} even, {odd} odd"
        )));
    }
    Ok(SignedGroup { m, elements })
}

/// All permutations of `[m]` in lexicographic order of their one-line form.
pub(crate) fn all_permutations(m: usize) -> Vec<Permutation> {
    let mut out = vec![];
    let mut cur: Vec<usize> = (0..m).collect();
    loop {
        out.push(Permutation::new(cur.clone()).expect("valid permutation"));
        // next lexicographic permutation
        let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}
