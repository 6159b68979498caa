//! Weyl group enumeration as permutations of the root list.
//!
//! Element ids come from a breadth-first search from the identity using right
//! multiplication by `s_1, …, s_n` in that order, so ids are deterministic and
//! lengths are non-decreasing along ids.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::rootsystem::{RootSystem, Weight, SIMPLE_NAMES};
use crate::Error;

pub const MAX_ORDER: usize = 51840;

/// Handle to an element of an enumerated [`WeylGroup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElt(u32);

impl WeylElt {
    pub const IDENTITY: WeylElt = WeylElt(0);

    pub fn id(self) -> usize {
        self.0 as usize
    }

    pub fn from_id(id: usize) -> Self {
        Self(id as u32)
    }
}

impl fmt::Display for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w#{}", self.0)
    }
}

pub struct WeylGroup {
    rs: RootSystem,
    nroots: usize,
    perms: Vec<u16>,
    words: Vec<Vec<u8>>,
    lengths: Vec<u32>,
    rmul: Vec<u32>,
    lmul: Vec<u32>,
    inverse: Vec<u32>,
    lookup: HashMap<Vec<u16>, u32>,
}

impl WeylGroup {
    pub fn enumerate(rs: RootSystem) -> Result<Self, Error> {
        let n = rs.rank();
        let nroots = rs.num_roots();
        let simple_perms: Vec<Vec<u16>> = (0..n)
            .map(|i| {
                rs.reflection_permutation(i)
                    .into_iter()
                    .map(|x| x as u16)
                    .collect()
            })
            .collect();
        let identity: Vec<u16> = (0..nroots as u16).collect();
        let mut perms: Vec<u16> = identity.clone();
        let mut words = vec![Vec::new()];
        let mut lengths = vec![0u32];
        let mut lookup = HashMap::new();
        lookup.insert(identity[..n].to_vec(), 0u32);
        let mut rmul: Vec<u32> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for (i, sp) in simple_perms.iter().enumerate() {
                let base = w * nroots;
                let key: Vec<u16> = (0..n).map(|x| perms[base + sp[x] as usize]).collect();
                let id = match lookup.get(&key) {
                    Some(&id) => id,
                    None => {
                        let id = words.len() as u32;
                        if words.len() >= MAX_ORDER {
                            return Err(Error::GroupTooLarge(MAX_ORDER));
                        }
                        let p: Vec<u16> = (0..nroots).map(|x| perms[base + sp[x] as usize]).collect();
                        perms.extend_from_slice(&p);
                        let mut word = words[w].clone();
                        word.push(i as u8);
                        words.push(word);
                        lengths.push(lengths[w] + 1);
                        lookup.insert(key, id);
                        queue.push_back(id as usize);
                        id
                    }
                };
                if rmul.len() < (w + 1) * n {
                    rmul.resize((w + 1) * n, u32::MAX);
                }
                rmul[w * n + i] = id;
            }
        }
        let order = words.len();
        let mut g = Self {
            rs,
            nroots,
            perms,
            words,
            lengths,
            rmul,
            lmul: Vec::new(),
            inverse: Vec::new(),
            lookup,
        };
        g.inverse = (0..order)
            .map(|w| {
                let mut x = 0usize;
                for &i in g.words[w].iter().rev() {
                    x = g.rmul[x * n + i as usize] as usize;
                }
                x as u32
            })
            .collect();
        // s_i w = (w^{-1} s_i)^{-1}
        let mut lmul = vec![0u32; order * n];
        for w in 0..order {
            for i in 0..n {
                let wi = g.inverse[w] as usize;
                lmul[w * n + i] = g.inverse[g.rmul[wi * n + i] as usize];
            }
        }
        g.lmul = lmul;
        Ok(g)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    pub fn identity(&self) -> WeylElt {
        WeylElt::IDENTITY
    }

    pub fn elements(&self) -> impl Iterator<Item = WeylElt> {
        (0..self.order() as u32).map(WeylElt)
    }

    pub fn longest(&self) -> WeylElt {
        WeylElt(self.order() as u32 - 1)
    }

    pub fn length(&self, w: WeylElt) -> usize {
        self.lengths[w.id()] as usize
    }

    pub fn word(&self, w: WeylElt) -> &[u8] {
        &self.words[w.id()]
    }

    /// The image of every root index under `w`.
    pub fn images(&self, w: WeylElt) -> &[u16] {
        let b = w.id() * self.nroots;
        &self.perms[b..b + self.nroots]
    }

    pub fn act_on_root(&self, w: WeylElt, r: usize) -> usize {
        self.perms[w.id() * self.nroots + r] as usize
    }

    pub fn right_simple(&self, w: WeylElt, i: usize) -> WeylElt {
        WeylElt(self.rmul[w.id() * self.rank() + i])
    }

    pub fn left_simple(&self, i: usize, w: WeylElt) -> WeylElt {
        WeylElt(self.lmul[w.id() * self.rank() + i])
    }

    pub fn inverse(&self, w: WeylElt) -> WeylElt {
        WeylElt(self.inverse[w.id()])
    }

    pub fn mul(&self, a: WeylElt, b: WeylElt) -> WeylElt {
        self.word(b)
            .iter()
            .fold(a, |x, &i| self.right_simple(x, i as usize))
    }

    pub fn from_word(&self, word: &[usize]) -> WeylElt {
        word.iter()
            .fold(self.identity(), |x, &i| self.right_simple(x, i))
    }

    /// The element acting on roots by `perm`, if there is one.
    pub fn from_permutation(&self, perm: &[usize]) -> Option<WeylElt> {
        let key: Vec<u16> = perm[..self.rank()].iter().map(|&x| x as u16).collect();
        let w = WeylElt(*self.lookup.get(&key)?);
        (self.images(w).iter().zip(perm).all(|(&a, &b)| a as usize == b)).then_some(w)
    }

    /// The reflection `s_r` for any root index `r`.
    pub fn reflection(&self, r: usize) -> WeylElt {
        let key: Vec<u16> = (0..self.rank())
            .map(|i| self.rs.reflect(r, i) as u16)
            .collect();
        WeylElt(self.lookup[&key])
    }

    pub fn is_right_descent(&self, w: WeylElt, i: usize) -> bool {
        !self.rs.is_positive(self.act_on_root(w, i))
    }

    pub fn descents_right(&self, w: WeylElt) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| self.is_right_descent(w, i))
            .collect()
    }

    /// `Σ_w^+`: positive roots sent to negative roots.
    pub fn inversion_set(&self, w: WeylElt) -> Vec<usize> {
        self.rs
            .positive_roots()
            .filter(|&r| !self.rs.is_positive(self.act_on_root(w, r)))
            .collect()
    }

    /// `α_i^∨(wλ) = (w^{-1}α_i)^∨(λ)`.
    pub fn act_on_weight(&self, w: WeylElt, lambda: &Weight) -> Result<Weight, Error> {
        let winv = self.inverse(w);
        let coords = (0..self.rank())
            .map(|i| self.rs.pair(self.act_on_root(winv, i), lambda))
            .collect::<Result<Vec<_>, _>>()?;
        Weight::new(coords)
    }

    /// Bruhat order by the lifting property. The recursion never branches,
    /// so it runs as a loop.
    pub fn bruhat_leq(&self, mut v: WeylElt, mut w: WeylElt) -> bool {
        loop {
            if self.length(v) > self.length(w) {
                return false;
            }
            if w == self.identity() {
                return v == w;
            }
            let s = (0..self.rank())
                .find(|&i| self.is_right_descent(w, i))
                .expect("non-identity element has a descent");
            w = self.right_simple(w, s);
            if self.is_right_descent(v, s) {
                v = self.right_simple(v, s);
            }
        }
    }

    pub fn longest_element_of_parabolic(&self, subset: &[usize]) -> WeylElt {
        let mut w = self.identity();
        while let Some(&i) = subset.iter().find(|&&i| !self.is_right_descent(w, i)) {
            w = self.right_simple(w, i);
        }
        w
    }

    /// Closure of `{e}` under right multiplication by `gens`, sorted by id.
    pub fn generated_subgroup(&self, gens: &[WeylElt]) -> Vec<WeylElt> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![self.identity()];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            i += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y.id()] {
                    seen[y.id()] = true;
                    out.push(y);
                }
            }
        }
        out.sort();
        out
    }

    /// `s_α s_β s_α`, or `1` for the identity.
    pub fn word_string(&self, w: WeylElt) -> String {
        let word = self.word(w);
        if word.is_empty() {
            return "1".into();
        }
        word.iter()
            .map(|&i| format!("s_{}", SIMPLE_NAMES[i as usize]))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A reflection subgroup `W'` of `W` generated by a root subsystem `Σ'`,
/// carrying its own Coxeter structure `(W', Π')`.
#[derive(Clone, Debug)]
pub struct ReflectionSubgroup {
    positive: Vec<usize>,
    simple: Vec<usize>,
    simple_elts: Vec<WeylElt>,
    elements: Vec<WeylElt>,
    /// Indexed by global id; `u32::MAX` marks non-members.
    lengths: Vec<u32>,
    words: HashMap<WeylElt, Vec<u8>>,
}

impl ReflectionSubgroup {
    /// `positive` must be the positive roots of a root subsystem.
    pub fn new(g: &WeylGroup, positive: Vec<usize>) -> Self {
        let rs = g.root_system();
        let simple: Vec<usize> = positive
            .iter()
            .copied()
            .filter(|&r| {
                !positive.iter().any(|&x| {
                    x != r
                        && rs
                            .index_of(
                                &rs.root(r)
                                    .iter()
                                    .zip(rs.root(x))
                                    .map(|(a, b)| a - b)
                                    .collect::<Vec<_>>(),
                            )
                            .is_some_and(|y| positive.contains(&y))
                })
            })
            .collect();
        let simple_elts: Vec<WeylElt> = simple.iter().map(|&r| g.reflection(r)).collect();
        let mut lengths = vec![u32::MAX; g.order()];
        let mut words = HashMap::new();
        let mut elements = vec![g.identity()];
        lengths[0] = 0;
        words.insert(g.identity(), Vec::new());
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            i += 1;
            for (j, &s) in simple_elts.iter().enumerate() {
                let y = g.mul(x, s);
                if lengths[y.id()] == u32::MAX {
                    let len = positive
                        .iter()
                        .filter(|&&r| !rs.is_positive(g.act_on_root(y, r)))
                        .count() as u32;
                    lengths[y.id()] = len;
                    let mut w = words[&x].clone();
                    w.push(j as u8);
                    words.insert(y, w);
                    elements.push(y);
                }
            }
        }
        Self {
            positive,
            simple,
            simple_elts,
            elements,
            lengths,
            words,
        }
    }

    pub fn positive_roots(&self) -> &[usize] {
        &self.positive
    }

    /// Simple roots `Π'` as root indices, in increasing index order.
    pub fn simple_roots(&self) -> &[usize] {
        &self.simple
    }

    pub fn simple_reflection(&self, j: usize) -> WeylElt {
        self.simple_elts[j]
    }

    /// Members in breadth-first order from the identity.
    pub fn elements(&self) -> &[WeylElt] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, w: WeylElt) -> bool {
        self.lengths[w.id()] != u32::MAX
    }

    /// Length with respect to `Π'`.
    pub fn length(&self, w: WeylElt) -> usize {
        debug_assert!(self.contains(w));
        self.lengths[w.id()] as usize
    }

    /// Reduced word in the indices of [`Self::simple_roots`].
    pub fn word(&self, w: WeylElt) -> &[u8] {
        &self.words[&w]
    }

    pub fn is_right_descent(&self, g: &WeylGroup, w: WeylElt, j: usize) -> bool {
        !g.root_system()
            .is_positive(g.act_on_root(w, self.simple[j]))
    }

    pub fn bruhat_leq(&self, g: &WeylGroup, mut v: WeylElt, mut w: WeylElt) -> bool {
        loop {
            if self.length(v) > self.length(w) {
                return false;
            }
            if w == g.identity() {
                return v == w;
            }
            let j = (0..self.simple.len())
                .find(|&j| self.is_right_descent(g, w, j))
                .expect("non-identity element has a descent");
            let s = self.simple_elts[j];
            w = g.mul(w, s);
            if self.is_right_descent(g, v, j) {
                v = g.mul(v, s);
            }
        }
    }

    /// Longest element of the standard parabolic subgroup on `subset`
    /// (indices into [`Self::simple_roots`]).
    pub fn longest_of_parabolic(&self, g: &WeylGroup, subset: &[usize]) -> WeylElt {
        let mut w = g.identity();
        while let Some(&j) = subset.iter().find(|&&j| !self.is_right_descent(g, w, j)) {
            w = g.mul(w, self.simple_elts[j]);
        }
        w
    }

    /// `s_{α+β} s_γ`-style string over the subgroup's simple reflections;
    /// reflections print as a single `s_{root}`.
    pub fn word_string(&self, g: &WeylGroup, w: WeylElt) -> String {
        let word = self.word(w);
        if word.is_empty() {
            return "1".into();
        }
        let rs = g.root_system();
        let refl = |r: usize| {
            if r < rs.rank() {
                format!("s_{}", rs.root_name(r))
            } else {
                format!("s_{{{}}}", rs.root_name(r))
            }
        };
        if let Some(&r) = self.positive.iter().find(|&&r| g.reflection(r) == w) {
            return refl(r);
        }
        word.iter()
            .map(|&j| refl(self.simple[j as usize]))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(name: &str) -> WeylGroup {
        WeylGroup::enumerate(RootSystem::from_name(name).unwrap()).unwrap()
    }

    #[test]
    fn orders() {
        for (name, order, top) in [
            ("A1", 2, 1),
            ("A2", 6, 3),
            ("A3", 24, 6),
            ("B2", 8, 4),
            ("G2", 12, 6),
            ("B3", 48, 9),
            ("D4", 192, 12),
            ("F4", 1152, 24),
        ] {
            let g = group(name);
            assert_eq!(g.order(), order, "{name}");
            assert_eq!(g.length(g.longest()), top, "{name}");
        }
    }

    #[test]
    fn element_invariants() {
        for name in ["A3", "B3", "G2"] {
            let g = group(name);
            let rs = g.root_system();
            for w in g.elements() {
                assert_eq!(g.inversion_set(w).len(), g.length(w));
                assert_eq!(g.word(w).len(), g.length(w));
                let ws: Vec<usize> = g.word(w).iter().map(|&i| i as usize).collect();
                assert_eq!(g.from_word(&ws), w);
                for r in 0..rs.num_roots() {
                    assert_eq!(
                        g.act_on_root(w, rs.negate(r)),
                        rs.negate(g.act_on_root(w, r))
                    );
                }
                assert_eq!(g.mul(w, g.inverse(w)), g.identity());
                for i in 0..g.rank() {
                    let d = g.length(g.right_simple(w, i)) as i64 - g.length(w) as i64;
                    assert_eq!(d.abs(), 1);
                    assert_eq!(g.left_simple(i, w), g.mul(g.from_word(&[i]), w));
                }
            }
        }
    }

    #[test]
    fn bruhat_partial_order() {
        for name in ["A2", "B2", "A3"] {
            let g = group(name);
            let els: Vec<WeylElt> = g.elements().collect();
            for &a in &els {
                assert!(g.bruhat_leq(a, a));
                assert!(g.bruhat_leq(g.identity(), a));
                for &b in &els {
                    if a != b && g.bruhat_leq(a, b) {
                        assert!(!g.bruhat_leq(b, a));
                    }
                    for &c in &els {
                        if g.bruhat_leq(a, b) && g.bruhat_leq(b, c) {
                            assert!(g.bruhat_leq(a, c));
                        }
                    }
                }
            }
        }
        let g = group("A3");
        assert!(g.bruhat_leq(g.from_word(&[1]), g.from_word(&[0, 1, 0])));
    }

    #[test]
    fn a3_examples() {
        let g = group("A3");
        let rs = g.root_system();
        let sgsb = g.from_word(&[2, 1]);
        let inv: Vec<String> = g.inversion_set(sgsb).iter().map(|&r| rs.root_name(r)).collect();
        assert_eq!(inv, ["β", "β+γ"]);
        assert_eq!(g.descents_right(g.longest()), vec![0, 1, 2]);
        assert!(g.descents_right(g.identity()).is_empty());
        let wt = g.longest_element_of_parabolic(&[0, 1]);
        assert_eq!(wt, g.from_word(&[0, 1, 0]));
        assert_eq!(g.word_string(wt), "s_α s_β s_α");
        assert_eq!(g.longest_element_of_parabolic(&[]), g.identity());
        assert_eq!(g.longest_element_of_parabolic(&[0, 1, 2]), g.longest());
        let rho = rs.rho();
        assert_eq!(
            g.act_on_weight(g.longest(), &rho.scaled(-1)).unwrap(),
            rho
        );
        assert_eq!(g.reflection(3), g.from_word(&[0, 1, 0]));
    }

    #[test]
    fn weight_action_compatible_with_pairing() {
        let g = group("B3");
        let rs = g.root_system();
        let lam = Weight::from_integers(&[3, -1, 2]);
        for w in g.elements() {
            let wl = g.act_on_weight(w, &lam).unwrap();
            for r in 0..rs.num_roots() {
                assert_eq!(
                    rs.pair(g.act_on_root(w, r), &wl).unwrap(),
                    rs.pair(r, &lam).unwrap()
                );
            }
        }
    }

    #[test]
    fn reflection_subgroup_b2_long_roots() {
        // Long roots of B2 span A1×A1; Bruhat order of W does not restrict to
        // the Coxeter order of the subgroup.
        let g = group("B2");
        let rs = g.root_system();
        let long = vec![0, rs.index_of(&[1, 2]).unwrap()];
        let sub = ReflectionSubgroup::new(&g, long);
        assert_eq!(sub.order(), 4);
        assert_eq!(sub.simple_roots().len(), 2);
        let a = sub.simple_reflection(0);
        let b = sub.simple_reflection(1);
        assert!(!sub.bruhat_leq(&g, a, b));
        assert!(g.bruhat_leq(a, b) || g.bruhat_leq(b, a));
    }

    #[test]
    fn cap_is_enforced_but_e6_fits() {
        let e6 = group("E6");
        assert_eq!(e6.order(), 51840);
    }
}
