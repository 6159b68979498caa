//! Right `W_Θ`-cosets, integral root systems, cross-sections, integral
//! models and the transport maps between them.
//!
//! Coset ids are ordered by the id of each coset's shortest element. Model
//! coset ids are ordered by `(ℓ_λ(w^E), id of w^E)`, so the identity coset of
//! every model is id 0 and lengths never decrease along ids.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::rootsystem::{classify, is_integral, Integrality, RootSystem, Weight};
use crate::weylgroup::{ReflectionSubgroup, WeylElt, WeylGroup};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CosetMove {
    Raise,
    Fix,
    Lower,
}

#[derive(Clone, Debug)]
pub struct Coset {
    pub members: Vec<WeylElt>,
    pub longest: WeylElt,
    pub shortest: WeylElt,
}

pub struct ThetaCosets<'w> {
    group: &'w WeylGroup,
    theta: Vec<usize>,
    w_theta: Vec<WeylElt>,
    cosets: Vec<Coset>,
    coset_of: Vec<u32>,
    action: Vec<(CosetMove, u32)>,
}

impl<'w> ThetaCosets<'w> {
    pub fn build(group: &'w WeylGroup, theta: &[usize]) -> Result<Self, Error> {
        let mut theta = theta.to_vec();
        theta.sort_unstable();
        theta.dedup();
        if let Some(&i) = theta.iter().find(|&&i| i >= group.rank()) {
            return Err(Error::Precondition(format!(
                "Θ contains index {i}, but the rank is {}",
                group.rank()
            )));
        }
        let gens: Vec<WeylElt> = theta.iter().map(|&i| group.from_word(&[i])).collect();
        let w_theta = group.generated_subgroup(&gens);
        let mut coset_of = vec![u32::MAX; group.order()];
        let mut cosets = Vec::new();
        // Ids increase with length, so the first unassigned element is the
        // shortest one of its coset.
        for w in group.elements() {
            if coset_of[w.id()] != u32::MAX {
                continue;
            }
            let mut members: Vec<WeylElt> = w_theta.iter().map(|&x| group.mul(x, w)).collect();
            members.sort();
            let longest = *members
                .iter()
                .max_by_key(|&&x| group.length(x))
                .expect("cosets are nonempty");
            for &m in &members {
                coset_of[m.id()] = cosets.len() as u32;
            }
            cosets.push(Coset {
                members,
                longest,
                shortest: w,
            });
        }
        let n = group.rank();
        let mut action = Vec::with_capacity(cosets.len() * n);
        for c in &cosets {
            for i in 0..n {
                let x = group.right_simple(c.longest, i);
                let target = coset_of[x.id()];
                let mv = if cosets[target as usize].longest == c.longest {
                    CosetMove::Fix
                } else if group.length(x) > group.length(c.longest) {
                    CosetMove::Raise
                } else {
                    CosetMove::Lower
                };
                action.push((mv, target));
            }
        }
        Ok(Self {
            group,
            theta,
            w_theta,
            cosets,
            coset_of,
            action,
        })
    }

    pub fn group(&self) -> &'w WeylGroup {
        self.group
    }

    pub fn root_system(&self) -> &'w RootSystem {
        self.group.root_system()
    }

    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    pub fn w_theta(&self) -> &[WeylElt] {
        &self.w_theta
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    pub fn coset(&self, c: usize) -> &Coset {
        &self.cosets[c]
    }

    pub fn coset_of(&self, w: WeylElt) -> usize {
        self.coset_of[w.id()] as usize
    }

    pub fn longest(&self, c: usize) -> WeylElt {
        self.cosets[c].longest
    }

    pub fn shortest(&self, c: usize) -> WeylElt {
        self.cosets[c].shortest
    }

    /// `ℓ(w^C)`.
    pub fn length(&self, c: usize) -> usize {
        self.group.length(self.cosets[c].longest)
    }

    pub fn identity_coset(&self) -> usize {
        0
    }

    /// `C ≤ D` iff `w^C ≤ w^D`.
    pub fn leq(&self, c: usize, d: usize) -> bool {
        self.group.bruhat_leq(self.longest(c), self.longest(d))
    }

    pub fn less(&self, c: usize, d: usize) -> bool {
        c != d && self.leq(c, d)
    }

    pub fn times_simple(&self, c: usize, i: usize) -> (CosetMove, usize) {
        let (m, t) = self.action[c * self.group.rank() + i];
        (m, t as usize)
    }

    /// `C·x` for any group element `x`.
    pub fn times(&self, c: usize, x: WeylElt) -> usize {
        self.coset_of(self.group.mul(self.longest(c), x))
    }

    /// The longest element's word, e.g. `s_α s_β s_α s_γ`.
    pub fn label(&self, c: usize) -> String {
        self.group.word_string(self.longest(c))
    }
}

/// Integral root system of `λ` and the cross-sections it determines.
#[derive(Clone, Debug)]
pub struct IntegralData {
    pub lambda: Weight,
    pub sigma_lambda_pos: Vec<usize>,
    pub w_lambda: Arc<ReflectionSubgroup>,
    pub a_lambda: Vec<WeylElt>,
    pub a_theta_lambda: Vec<WeylElt>,
    /// For each global coset, the index into `a_theta_lambda` of its double coset.
    pub double_coset_of: Vec<usize>,
    /// Global cosets of each double coset, ascending.
    pub double_cosets: Vec<Vec<usize>>,
}

impl IntegralData {
    pub fn pi_lambda(&self) -> &[usize] {
        self.w_lambda.simple_roots()
    }

    /// The `A_{Θ,λ}`-representative of the double coset containing `c`.
    pub fn representative(&self, c: usize) -> WeylElt {
        self.a_theta_lambda[self.double_coset_of[c]]
    }

    pub fn is_integral_root(&self, r: usize, rs: &RootSystem) -> bool {
        let p = if rs.is_positive(r) { r } else { rs.negate(r) };
        self.sigma_lambda_pos.contains(&p)
    }
}

/// Inverse of the Cartan matrix, for solving `wλ − λ = Σ n_j α_j`.
fn cartan_inverse(rs: &RootSystem) -> Vec<Vec<BigRational>> {
    let n = rs.rank();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        BigRational::from_integer(rs.cartan()[i][j].into())
                    } else if j - n == i {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("Cartan matrices are invertible");
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(&row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Whether `wλ − λ` lies in the root lattice.
fn differs_by_root_lattice(
    g: &WeylGroup,
    inv: &[Vec<BigRational>],
    w: WeylElt,
    lambda: &Weight,
) -> Result<bool, Error> {
    let wl = g.act_on_weight(w, lambda)?;
    let d: Vec<_> = (0..g.rank())
        .map(|i| wl.coord(i) - lambda.coord(i))
        .collect();
    if d.iter().any(|v| v.transcendental.iter().any(|c| !c.is_zero())) {
        return Ok(false);
    }
    Ok(inv.iter().all(|row| {
        let n: BigRational = row
            .iter()
            .zip(&d)
            .map(|(a, v)| a * &v.rational)
            .fold(BigRational::zero(), |s, x| s + x);
        n.is_integer()
    }))
}

pub fn integral_data(tc: &ThetaCosets<'_>, lambda: &Weight) -> Result<IntegralData, Error> {
    let g = tc.group();
    let rs = g.root_system();
    rs.check_rank(lambda)?;
    let mut sigma_lambda_pos = Vec::new();
    for r in rs.positive_roots() {
        if is_integral(&rs.pair(r, lambda)?) {
            sigma_lambda_pos.push(r);
        }
    }
    let w_lambda = Arc::new(ReflectionSubgroup::new(g, sigma_lambda_pos.clone()));
    let inv = cartan_inverse(rs);
    for w in g.elements() {
        if w_lambda.contains(w) != differs_by_root_lattice(g, &inv, w, lambda)? {
            return Err(Error::Invariant(format!(
                "W_λ generated by integral reflections disagrees with {{w : wλ−λ ∈ ZΣ}} at {}",
                g.word_string(w)
            )));
        }
    }
    let a_lambda: Vec<WeylElt> = g
        .elements()
        .filter(|&u| {
            sigma_lambda_pos
                .iter()
                .all(|&r| rs.is_positive(g.act_on_root(u, r)))
        })
        .collect();
    let a_theta_lambda: Vec<WeylElt> = a_lambda
        .iter()
        .copied()
        .filter(|&u| tc.shortest(tc.coset_of(u)) == u)
        .collect();
    let simple_elts: Vec<WeylElt> = (0..w_lambda.simple_roots().len())
        .map(|j| w_lambda.simple_reflection(j))
        .collect();
    let mut double_coset_of = vec![usize::MAX; tc.len()];
    let mut double_cosets = Vec::new();
    for (k, &u) in a_theta_lambda.iter().enumerate() {
        let start = tc.coset_of(u);
        if double_coset_of[start] != usize::MAX {
            return Err(Error::Invariant(format!(
                "two elements of A_Θ,λ share the double coset of {}",
                g.word_string(u)
            )));
        }
        double_coset_of[start] = k;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let c = orbit[i];
            i += 1;
            for &s in &simple_elts {
                let d = tc.times(c, s);
                if double_coset_of[d] == usize::MAX {
                    double_coset_of[d] = k;
                    orbit.push(d);
                } else if double_coset_of[d] != k {
                    return Err(Error::Invariant("double cosets overlap".into()));
                }
            }
        }
        orbit.sort_unstable();
        double_cosets.push(orbit);
    }
    if double_coset_of.contains(&usize::MAX) {
        return Err(Error::Invariant(
            "A_Θ,λ misses a (W_Θ, W_λ)-double coset".into(),
        ));
    }
    Ok(IntegralData {
        lambda: lambda.clone(),
        sigma_lambda_pos,
        w_lambda,
        a_lambda,
        a_theta_lambda,
        double_coset_of,
        double_cosets,
    })
}

/// The model `(W_λ, Π_λ, Θ(u,λ))` attached to the double coset `W_Θ u W_λ`.
#[derive(Clone, Debug)]
pub struct IntegralModel {
    pub u: WeylElt,
    /// Position of `u` in `A_{Θ,λ}`.
    pub index: usize,
    pub lambda: Weight,
    w_lambda: Arc<ReflectionSubgroup>,
    /// `Θ(u,λ)` as indices into `Π_λ`.
    theta_model: Vec<usize>,
    cosets: Vec<Coset>,
    lengths: Vec<usize>,
    coset_of: HashMap<WeylElt, usize>,
    action: Vec<(CosetMove, usize)>,
    ind: Vec<usize>,
    restrict: HashMap<usize, usize>,
}

impl IntegralModel {
    pub fn w_lambda(&self) -> &ReflectionSubgroup {
        &self.w_lambda
    }

    pub fn pi_lambda(&self) -> &[usize] {
        self.w_lambda.simple_roots()
    }

    /// `Θ(u,λ)` as root indices.
    pub fn theta_roots(&self) -> Vec<usize> {
        self.theta_model.iter().map(|&j| self.pi_lambda()[j]).collect()
    }

    /// `Θ(u,λ)` as indices into `Π_λ`.
    pub fn theta_indices(&self) -> &[usize] {
        &self.theta_model
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn coset(&self, e: usize) -> &Coset {
        &self.cosets[e]
    }

    pub fn longest(&self, e: usize) -> WeylElt {
        self.cosets[e].longest
    }

    /// `ℓ_λ(w^E)`.
    pub fn length(&self, e: usize) -> usize {
        self.lengths[e]
    }

    pub fn coset_of(&self, v: WeylElt) -> Option<usize> {
        self.coset_of.get(&v).copied()
    }

    /// Action of the `j`-th simple root of `Π_λ` on model coset `e`.
    pub fn times_simple(&self, e: usize, j: usize) -> (CosetMove, usize) {
        self.action[e * self.pi_lambda().len() + j]
    }

    pub fn simple_position(&self, root: usize) -> Option<usize> {
        self.pi_lambda().iter().position(|&r| r == root)
    }

    pub fn ind(&self, e: usize) -> usize {
        self.ind[e]
    }

    pub fn restrict(&self, c: usize) -> Option<usize> {
        self.restrict.get(&c).copied()
    }

    /// `≤_{u,λ}`: Coxeter Bruhat order of `(W_λ, Π_λ)` on longest elements.
    pub fn leq(&self, g: &WeylGroup, e: usize, f: usize) -> bool {
        self.w_lambda
            .bruhat_leq(g, self.cosets[e].longest, self.cosets[f].longest)
    }

    pub fn less(&self, g: &WeylGroup, e: usize, f: usize) -> bool {
        e != f && self.leq(g, e, f)
    }

    pub fn label(&self, g: &WeylGroup, e: usize) -> String {
        self.w_lambda.word_string(g, self.cosets[e].longest)
    }

    /// Identifies the module space spanned by this model's cosets.
    pub fn space_key(&self) -> (WeylElt, Weight) {
        (self.u, self.lambda.clone())
    }
}

fn in_theta_span(rs: &RootSystem, theta: &[usize], r: usize) -> bool {
    rs.root(r)
        .iter()
        .enumerate()
        .all(|(i, &c)| c == 0 || theta.contains(&i))
}

pub fn build_integral_model(
    tc: &ThetaCosets<'_>,
    idata: &IntegralData,
    u: WeylElt,
) -> Result<IntegralModel, Error> {
    let g = tc.group();
    let rs = g.root_system();
    let index = idata
        .a_theta_lambda
        .iter()
        .position(|&x| x == u)
        .ok_or_else(|| {
            Error::Precondition(format!("{} is not in A_Θ,λ", g.word_string(u)))
        })?;
    let wl = idata.w_lambda.clone();
    let pi = wl.simple_roots();
    let theta_model: Vec<usize> = (0..pi.len())
        .filter(|&j| in_theta_span(rs, tc.theta(), g.act_on_root(u, pi[j])))
        .collect();
    let gens: Vec<WeylElt> = theta_model.iter().map(|&j| wl.simple_reflection(j)).collect();
    let sub = g.generated_subgroup(&gens);
    let mut assigned: HashMap<WeylElt, ()> = HashMap::new();
    let mut cosets = Vec::new();
    for &v in wl.elements() {
        if assigned.contains_key(&v) {
            continue;
        }
        let mut members: Vec<WeylElt> = sub.iter().map(|&x| g.mul(x, v)).collect();
        members.sort();
        for &m in &members {
            assigned.insert(m, ());
        }
        let longest = *members.iter().max_by_key(|&&x| wl.length(x)).unwrap();
        let shortest = *members.iter().min_by_key(|&&x| wl.length(x)).unwrap();
        cosets.push(Coset {
            members,
            longest,
            shortest,
        });
    }
    cosets.sort_by_key(|c| (wl.length(c.longest), c.longest));
    let lengths: Vec<usize> = cosets.iter().map(|c| wl.length(c.longest)).collect();
    let mut coset_of = HashMap::new();
    for (e, c) in cosets.iter().enumerate() {
        for &m in &c.members {
            coset_of.insert(m, e);
        }
    }
    let mut action = Vec::with_capacity(cosets.len() * pi.len());
    for (e, c) in cosets.iter().enumerate() {
        for j in 0..pi.len() {
            let x = g.mul(c.longest, wl.simple_reflection(j));
            let t = coset_of[&x];
            let mv = if t == e {
                CosetMove::Fix
            } else if wl.length(x) > lengths[e] {
                CosetMove::Raise
            } else {
                CosetMove::Lower
            };
            action.push((mv, t));
        }
    }
    let ind: Vec<usize> = cosets
        .iter()
        .map(|c| tc.coset_of(g.mul(u, c.longest)))
        .collect();
    let mut restrict = HashMap::new();
    for (e, &c) in ind.iter().enumerate() {
        if restrict.insert(c, e).is_some() {
            return Err(Error::Invariant(format!(
                "ind_λ is not injective on the model of {}",
                g.word_string(u)
            )));
        }
    }
    let mut image: Vec<usize> = ind.clone();
    image.sort_unstable();
    if image != idata.double_cosets[index] {
        return Err(Error::Invariant(format!(
            "ind_λ does not map onto the double coset of {}",
            g.word_string(u)
        )));
    }
    Ok(IntegralModel {
        u,
        index,
        lambda: idata.lambda.clone(),
        w_lambda: wl,
        theta_model,
        cosets,
        lengths,
        coset_of,
        action,
        ind,
        restrict,
    })
}

pub fn build_all_models(
    tc: &ThetaCosets<'_>,
    idata: &IntegralData,
) -> Result<Vec<IntegralModel>, Error> {
    idata
        .a_theta_lambda
        .iter()
        .map(|&u| build_integral_model(tc, idata, u))
        .collect()
}

fn check_non_integral_simple(rs: &RootSystem, lambda: &Weight, beta: usize) -> Result<(), Error> {
    if beta >= rs.rank() {
        return Err(Error::Precondition(format!("{beta} is not a simple index")));
    }
    if let Integrality::Integer(n) = classify(&rs.pair(beta, lambda)?) {
        return Err(Error::Precondition(format!(
            "{} is integral to λ: {}(λ) = {n}",
            rs.root_name(beta),
            rs.coroot_name(beta)
        )));
    }
    Ok(())
}

/// A model transported along a non-integral simple reflection.
#[derive(Clone, Debug)]
pub struct Conjugation {
    pub beta: usize,
    pub data: IntegralData,
    pub model: IntegralModel,
    /// Model coset `E` of the source ↦ coset `s_β E s_β` of the target.
    pub map: Vec<usize>,
}

pub fn conjugate_model(
    tc: &ThetaCosets<'_>,
    model: &IntegralModel,
    beta: usize,
) -> Result<Conjugation, Error> {
    let g = tc.group();
    let rs = g.root_system();
    check_non_integral_simple(rs, &model.lambda, beta)?;
    let lambda2 = model.lambda.simple_reflect(rs, beta);
    let data = integral_data(tc, &lambda2)?;
    let sb = g.from_word(&[beta]);
    let c = tc.coset_of(g.mul(model.u, sb));
    let r = data.representative(c);
    if tc.coset_of(r) != c {
        return Err(Error::Invariant(format!(
            "W_Θ u s_β is not the smallest coset of its double coset (u = {}, β = {})",
            g.word_string(model.u),
            rs.root_name(beta)
        )));
    }
    let target = build_integral_model(tc, &data, r)?;
    let mut map = Vec::with_capacity(model.len());
    for e in 0..model.len() {
        let images: Vec<Option<usize>> = model
            .coset(e)
            .members
            .iter()
            .map(|&v| target.coset_of(g.mul(g.mul(sb, v), sb)))
            .collect();
        let f = images[0].ok_or_else(|| {
            Error::Invariant("conjugation by s_β leaves W_{s_βλ}".into())
        })?;
        if images.iter().any(|&x| x != Some(f)) {
            return Err(Error::Invariant(
                "conjugation by s_β does not map model cosets to model cosets".into(),
            ));
        }
        if target.ind(f) != tc.times(model.ind(e), sb) {
            return Err(Error::Invariant(
                "conjugation square ind ∘ s_β(−)s_β = (−)s_β ∘ ind fails".into(),
            ));
        }
        map.push(f);
    }
    let mut sorted = map.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != target.len() || map.len() != target.len() {
        return Err(Error::Invariant("conjugation is not a bijection".into()));
    }
    Ok(Conjugation {
        beta,
        data,
        model: target,
        map,
    })
}

/// Output of the descent-chain search: `α ∈ Π_λ` and simple `β_1..β_s`
/// with `z = s_{β_1}⋯s_{β_s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentChain {
    pub alpha: usize,
    pub chain: Vec<usize>,
    pub z: WeylElt,
}

pub fn descent_chain(
    tc: &ThetaCosets<'_>,
    idata: &IntegralData,
    c: usize,
) -> Result<DescentChain, Error> {
    let g = tc.group();
    let rs = g.root_system();
    let u = idata.representative(c);
    if tc.coset_of(u) == c {
        return Err(Error::Precondition(format!(
            "C = W_Θ u is the smallest coset of its double coset (u = {})",
            g.word_string(u)
        )));
    }
    let mut z = g.identity();
    let mut mu = idata.lambda.clone();
    let mut d = c;
    let mut chain = Vec::new();
    for _ in 0..=tc.length(c) {
        let lowers = |i: usize| tc.times_simple(d, i).0 == CosetMove::Lower;
        let mut integral_descent = None;
        for i in 0..rs.rank() {
            if lowers(i) && is_integral(&rs.pair(i, &mu)?) {
                integral_descent = Some(i);
                break;
            }
        }
        if let Some(i) = integral_descent {
            return Ok(DescentChain {
                alpha: g.act_on_root(z, i),
                chain,
                z,
            });
        }
        let beta = (0..rs.rank()).find(|&i| lowers(i)).ok_or_else(|| {
            Error::Invariant("descent chain reached the identity coset".into())
        })?;
        chain.push(beta);
        z = g.right_simple(z, beta);
        mu = mu.simple_reflect(rs, beta);
        d = tc.times_simple(d, beta).1;
    }
    Err(Error::Invariant("descent chain did not terminate".into()))
}

/// Stabilizer data for a (possibly singular) antidominant `λ`.
#[derive(Clone, Debug)]
pub struct StabilizerData {
    /// `W^λ`, ascending.
    pub stabilizer: Vec<WeylElt>,
    /// Positive roots of `Σ^λ`.
    pub singular_roots: Vec<usize>,
    /// `A_Θ^λ`, ascending.
    pub a_theta_sing: Vec<WeylElt>,
    /// For each global coset, the index into `a_theta_sing` of its
    /// `(W_Θ, W^λ)`-double coset.
    pub group_of: Vec<usize>,
}

pub fn stabilizer_data(tc: &ThetaCosets<'_>, lambda: &Weight) -> Result<StabilizerData, Error> {
    let g = tc.group();
    let rs = g.root_system();
    if let Some((r, n)) = rs.dominance_witness(lambda)? {
        return Err(Error::Precondition(format!(
            "λ not antidominant: {}(λ) = {n}",
            rs.coroot_name(r)
        )));
    }
    let mut stabilizer = Vec::new();
    for w in g.elements() {
        if &g.act_on_weight(w, lambda)? == lambda {
            stabilizer.push(w);
        }
    }
    let mut singular_roots = Vec::new();
    for r in rs.positive_roots() {
        if rs.pair(r, lambda)?.is_zero() {
            singular_roots.push(r);
        }
    }
    let sub = ReflectionSubgroup::new(g, singular_roots.clone());
    let mut generated = sub.elements().to_vec();
    generated.sort();
    if generated != stabilizer {
        return Err(Error::Invariant(
            "W^λ differs from the reflection group of Σ^λ".into(),
        ));
    }
    let a_theta_sing: Vec<WeylElt> = g
        .elements()
        .filter(|&u| {
            tc.shortest(tc.coset_of(u)) == u
                && singular_roots
                    .iter()
                    .all(|&r| rs.is_positive(g.act_on_root(u, r)))
        })
        .collect();
    let mut group_of = vec![usize::MAX; tc.len()];
    for (k, &z) in a_theta_sing.iter().enumerate() {
        for &s in &stabilizer {
            let d = tc.coset_of(g.mul(z, s));
            if group_of[d] != usize::MAX && group_of[d] != k {
                return Err(Error::Invariant(format!(
                    "A_Θ^λ has two elements in the double coset of {}",
                    g.word_string(z)
                )));
            }
            group_of[d] = k;
        }
    }
    if group_of.contains(&usize::MAX) {
        return Err(Error::Invariant(
            "A_Θ^λ misses a (W_Θ, W^λ)-double coset".into(),
        ));
    }
    Ok(StabilizerData {
        stabilizer,
        singular_roots,
        a_theta_sing,
        group_of,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::CorootValue;

    fn a3() -> WeylGroup {
        WeylGroup::enumerate(RootSystem::from_name("A3").unwrap()).unwrap()
    }

    fn lambda7() -> Weight {
        let v = |r: i64, t: i64| CorootValue {
            rational: BigRational::from_integer(r.into()),
            transcendental: vec![BigRational::from_integer(t.into())],
        };
        Weight::new(vec![v(-5, -4), v(-5, 4), v(-5, 0)]).unwrap()
    }

    fn names(g: &WeylGroup, v: &[WeylElt]) -> Vec<String> {
        v.iter().map(|&w| g.word_string(w)).collect()
    }

    #[test]
    fn a3_theta_cosets() {
        let g = a3();
        let tc = ThetaCosets::build(&g, &[0, 1]).unwrap();
        assert_eq!(tc.len(), 4);
        let longest: Vec<String> = (0..4).map(|c| tc.label(c)).collect();
        assert_eq!(
            longest,
            [
                "s_α s_β s_α",
                "s_α s_β s_α s_γ",
                "s_α s_β s_α s_γ s_β",
                &g.word_string(g.longest())
            ]
        );
        assert_eq!(tc.times_simple(0, 0).0, CosetMove::Fix);
        assert_eq!(tc.times_simple(0, 2), (CosetMove::Raise, 1));
        let c = tc.coset_of(g.from_word(&[2, 1]));
        assert_eq!(tc.times_simple(c, 1), (CosetMove::Lower, 1));
        assert_eq!(ThetaCosets::build(&g, &[]).unwrap().len(), 24);
        assert_eq!(ThetaCosets::build(&g, &[0, 1, 2]).unwrap().len(), 1);
    }

    #[test]
    fn a3_integral_data() {
        let g = a3();
        let rs = g.root_system();
        let tc = ThetaCosets::build(&g, &[0, 1]).unwrap();
        let d = integral_data(&tc, &lambda7()).unwrap();
        let sig: Vec<String> = d.sigma_lambda_pos.iter().map(|&r| rs.root_name(r)).collect();
        assert_eq!(sig, ["γ", "α+β", "α+β+γ"]);
        let pi: Vec<String> = d.pi_lambda().iter().map(|&r| rs.root_name(r)).collect();
        assert_eq!(pi, ["γ", "α+β"]);
        assert_eq!(names(&g, &d.a_lambda), ["1", "s_α", "s_β", "s_γ s_β"]);
        assert_eq!(names(&g, &d.a_theta_lambda), ["1", "s_γ s_β"]);

        let m = build_integral_model(&tc, &d, g.identity()).unwrap();
        let th: Vec<String> = m.theta_roots().iter().map(|&r| rs.root_name(r)).collect();
        assert_eq!(th, ["α+β"]);
        let labels: Vec<String> = (0..m.len()).map(|e| m.label(&g, e)).collect();
        assert_eq!(labels, ["s_{α+β}", "s_{α+β} s_γ", "s_{α+β+γ}"]);
        assert_eq!(m.longest(2), g.reflection(5));
        assert_eq!(
            (0..3).map(|e| m.ind(e)).collect::<Vec<_>>(),
            vec![0, 1, 3]
        );
        let m2 = build_integral_model(&tc, &d, g.from_word(&[2, 1])).unwrap();
        assert_eq!(m2.theta_indices(), &[0, 1]);
        assert_eq!(m2.len(), 1);
        assert_eq!(m2.ind(0), tc.coset_of(g.from_word(&[2, 1])));
        assert!(build_integral_model(&tc, &d, g.from_word(&[0])).is_err());
    }

    #[test]
    fn a3_descent_chains() {
        let g = a3();
        let tc = ThetaCosets::build(&g, &[0, 1]).unwrap();
        let d = integral_data(&tc, &lambda7()).unwrap();
        let r = descent_chain(&tc, &d, 1).unwrap();
        assert_eq!((r.alpha, r.chain.clone()), (2, vec![]));
        let r = descent_chain(&tc, &d, 3).unwrap();
        assert_eq!((r.alpha, r.chain.clone()), (3, vec![0]));
        assert!(descent_chain(&tc, &d, 2).is_err());
        assert!(descent_chain(&tc, &d, 0).is_err());
    }

    #[test]
    fn conjugation_examples() {
        let g = a3();
        let rs = g.root_system();
        let tc = ThetaCosets::build(&g, &[0, 1]).unwrap();
        let d = integral_data(&tc, &lambda7()).unwrap();
        let m = build_integral_model(&tc, &d, g.identity()).unwrap();
        let cj = conjugate_model(&tc, &m, 0).unwrap();
        assert_eq!(tc.coset_of(cj.model.u), tc.coset_of(g.from_word(&[0])));
        let th: Vec<String> = cj.model.theta_roots().iter().map(|&r| rs.root_name(r)).collect();
        assert_eq!(th, ["β"]);
        let back = conjugate_model(&tc, &cj.model, 0).unwrap();
        assert_eq!(back.model.u, m.u);
        assert_eq!(back.model.lambda, m.lambda);
        let composed: Vec<usize> = cj.map.iter().map(|&f| back.map[f]).collect();
        assert_eq!(composed, (0..m.len()).collect::<Vec<_>>());
        assert!(conjugate_model(&tc, &m, 2).is_err());
        let m2 = build_integral_model(&tc, &d, g.from_word(&[2, 1])).unwrap();
        let cj2 = conjugate_model(&tc, &m2, 0).unwrap();
        assert_eq!(cj2.model.len(), 1);
    }

    #[test]
    fn stabilizers() {
        let a2 = WeylGroup::enumerate(RootSystem::from_name("A2").unwrap()).unwrap();
        let tc = ThetaCosets::build(&a2, &[]).unwrap();
        let s = stabilizer_data(&tc, &Weight::from_integers(&[0, -1])).unwrap();
        assert_eq!(names(&a2, &s.stabilizer), ["1", "s_α"]);
        assert_eq!(names(&a2, &s.a_theta_sing), ["1", "s_β", "s_α s_β"]);
        let s = stabilizer_data(&tc, &Weight::from_integers(&[-1, -1])).unwrap();
        assert_eq!(s.stabilizer.len(), 1);
        assert_eq!(s.a_theta_sing.len(), 6);
        let err = stabilizer_data(&tc, &Weight::from_integers(&[2, -1])).unwrap_err();
        assert!(err.to_string().contains("α^∨(λ) = 2"), "{err}");
    }
}
