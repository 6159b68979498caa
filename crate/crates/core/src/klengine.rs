//! Whittaker Kazhdan-Lusztig bases.
//!
//! Path A computes the basis `ψ_{u,λ}` inside each integral model and
//! transports it to `H_Θ` through `ind_λ`. Path B computes `φ_λ` directly on
//! `W_Θ\W`, moving between λ-points along non-integral simple reflections.
//! The two must agree; Path B exists to check Path A.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::cosetlab::{
    build_all_models, integral_data, CosetMove, IntegralData, IntegralModel, ThetaCosets,
};
use crate::hecke::{
    global_space, model_space, right_mult_simple, t_alpha, t_alpha_model_at, HeckeElt, Space,
};
use crate::laurent::LaurentPoly;
use crate::oracle;
use crate::rootsystem::{is_integral, Weight};
use crate::weylgroup::{WeylElt, WeylGroup};
use crate::Error;

/// `ψ_{u,λ}` for one model, indexed by model coset.
#[derive(Clone, Debug)]
pub struct ModelBasis {
    pub psi: Vec<HeckeElt>,
}

impl ModelBasis {
    /// `P^{u,λ}_{FG}`.
    pub fn poly(&self, f: usize, g: usize) -> LaurentPoly {
        self.psi[f].coeff(g)
    }
}

/// Subtracts `c·basis(G)` for the remaining nonzero constant term at the
/// `G ≠ top` of largest `key`, until only `top` may carry a constant term.
fn eliminate_constants(
    xi: &mut HeckeElt,
    top: usize,
    key: impl Fn(usize) -> (usize, usize),
    mut basis: impl FnMut(usize) -> Result<HeckeElt, Error>,
) -> Result<(), Error> {
    loop {
        let next = xi
            .iter()
            .filter(|&(g, p)| g != top && p.coeff(0) != 0)
            .map(|(g, p)| (key(g), g, p.coeff(0)))
            .max();
        let Some((_, g, c)) = next else {
            return Ok(());
        };
        let b = basis(g)?;
        xi.add_scaled(&LaurentPoly::constant(-c), &b)?;
    }
}

fn check_kl_shape(x: &HeckeElt, top: usize, what: impl Fn() -> String) -> Result<(), Error> {
    if !x.coeff(top).is_one() {
        return Err(Error::Invariant(format!(
            "{}: leading coefficient is {}, not 1",
            what(),
            x.coeff(top)
        )));
    }
    if let Some((g, p)) = x.iter().find(|&(g, p)| g != top && !p.in_qzq()) {
        return Err(Error::Invariant(format!(
            "{}: coefficient {p} at basis element {g} is not in qZ[q]",
            what()
        )));
    }
    Ok(())
}

/// One step of the model recursion: `ψ(F)` from `T_α(ψ(Fs_α))` for the
/// `j`-th simple root of `Π_λ`, which must lower `F`.
pub fn psi_step(
    g: &WeylGroup,
    model: &IntegralModel,
    psi: &[HeckeElt],
    f: usize,
    j: usize,
) -> Result<HeckeElt, Error> {
    let (mv, lower) = model.times_simple(f, j);
    if mv != CosetMove::Lower {
        return Err(Error::Precondition(format!(
            "simple root #{j} of Π_λ does not lower model coset {f}"
        )));
    }
    let mut xi = t_alpha_model_at(model, j, &psi[lower])?;
    eliminate_constants(
        &mut xi,
        f,
        |x| (model.length(x), x),
        |x| {
            psi.get(x).cloned().ok_or_else(|| {
                Error::Invariant(format!("model coset {x} above {f} appeared in T_α ψ"))
            })
        },
    )?;
    check_kl_shape(&xi, f, || {
        format!("ψ for model coset {} of u = {}", model.label(g, f), g.word_string(model.u))
    })?;
    Ok(xi)
}

/// `ψ_{u,λ}` with the smallest lowering simple root at each step.
pub fn kl_basis_model(g: &WeylGroup, model: &IntegralModel) -> Result<ModelBasis, Error> {
    let space = model_space(model);
    let mut psi: Vec<HeckeElt> = Vec::with_capacity(model.len());
    for f in 0..model.len() {
        if f == 0 {
            psi.push(HeckeElt::basis(space.clone(), 0));
            continue;
        }
        let j = (0..model.pi_lambda().len())
            .find(|&j| model.times_simple(f, j).0 == CosetMove::Lower)
            .ok_or_else(|| Error::Invariant(format!("model coset {f} has no descent")))?;
        let x = psi_step(g, model, &psi, f, j)?;
        psi.push(x);
    }
    Ok(ModelBasis { psi })
}

/// A descent choice that changes `ψ(F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentFinding {
    pub coset: usize,
    pub simple: usize,
}

/// Recomputes each `ψ(F)` with every lowering simple root of `Π_λ` and
/// reports those that disagree with `basis`.
pub fn descent_independence(
    g: &WeylGroup,
    model: &IntegralModel,
    basis: &ModelBasis,
) -> Result<Vec<DescentFinding>, Error> {
    let mut out = Vec::new();
    for f in 1..model.len() {
        for j in 0..model.pi_lambda().len() {
            if model.times_simple(f, j).0 != CosetMove::Lower {
                continue;
            }
            match psi_step(g, model, &basis.psi, f, j) {
                Ok(x) if x == basis.psi[f] => {}
                _ => out.push(DescentFinding { coset: f, simple: j }),
            }
        }
    }
    Ok(out)
}

/// Path A: `φ_λ(C) = Σ_G P^{u,λ}_{C|_λ,G} δ_{ind(G)}`.
pub fn phi_transport(
    tc: &ThetaCosets<'_>,
    idata: &IntegralData,
    models: &[IntegralModel],
    bases: &[ModelBasis],
) -> Result<Vec<HeckeElt>, Error> {
    let space = global_space(tc);
    (0..tc.len())
        .map(|c| {
            let k = idata.double_coset_of[c];
            let m = &models[k];
            let e = m
                .restrict(c)
                .ok_or_else(|| Error::Invariant(format!("coset {c} missing from its model")))?;
            Ok(bases[k].psi[e].relabel(space.clone(), |x| m.ind(x)))
        })
        .collect()
}

/// Path B: memoized recursion over `(λ-point, coset)`.
pub struct PhiDirect<'a, 'w> {
    tc: &'a ThetaCosets<'w>,
    space: Arc<Space>,
    points: Vec<Weight>,
    point_ids: HashMap<Weight, usize>,
    integral_simple: Vec<Vec<bool>>,
    memo: HashMap<(usize, usize), HeckeElt>,
}

impl<'a, 'w> PhiDirect<'a, 'w> {
    pub fn new(tc: &'a ThetaCosets<'w>) -> Self {
        Self {
            tc,
            space: global_space(tc),
            points: Vec::new(),
            point_ids: HashMap::new(),
            integral_simple: Vec::new(),
            memo: HashMap::new(),
        }
    }

    fn intern(&mut self, lambda: &Weight) -> Result<usize, Error> {
        if let Some(&p) = self.point_ids.get(lambda) {
            return Ok(p);
        }
        let rs = self.tc.root_system();
        let flags = (0..rs.rank())
            .map(|i| Ok(is_integral(&rs.pair(i, lambda)?)))
            .collect::<Result<Vec<bool>, Error>>()?;
        let p = self.points.len();
        self.points.push(lambda.clone());
        self.point_ids.insert(lambda.clone(), p);
        self.integral_simple.push(flags);
        Ok(p)
    }

    /// Number of distinct λ-points visited so far.
    pub fn points_visited(&self) -> usize {
        self.points.len()
    }

    pub fn phi(&mut self, lambda: &Weight, c: usize) -> Result<HeckeElt, Error> {
        let p = self.intern(lambda)?;
        self.phi_at(p, c)
    }

    pub fn phi_all(&mut self, lambda: &Weight) -> Result<Vec<HeckeElt>, Error> {
        let p = self.intern(lambda)?;
        (0..self.tc.len()).map(|c| self.phi_at(p, c)).collect()
    }

    fn phi_at(&mut self, p: usize, c: usize) -> Result<HeckeElt, Error> {
        if let Some(x) = self.memo.get(&(p, c)) {
            return Ok(x.clone());
        }
        let tc = self.tc;
        let rank = tc.group().rank();
        let lowers = |i: usize| tc.times_simple(c, i).0 == CosetMove::Lower;
        let result = if c == tc.identity_coset() {
            HeckeElt::basis(self.space.clone(), c)
        } else if let Some(beta) = (0..rank).find(|&i| lowers(i) && !self.integral_simple[p][i]) {
            // φ_λ(C) = φ_{s_βλ}(Cs_β)·s_β
            let mu = self.points[p].simple_reflect(tc.root_system(), beta);
            let q = self.intern(&mu)?;
            let lower = tc.times_simple(c, beta).1;
            let x = self.phi_at(q, lower)?;
            right_mult_simple(tc, &x, beta)?
        } else {
            let alpha = (0..rank)
                .find(|&i| lowers(i))
                .ok_or_else(|| Error::Invariant(format!("coset {c} has no descent")))?;
            let lower = tc.times_simple(c, alpha).1;
            let prev = self.phi_at(p, lower)?;
            let mut xi = t_alpha(tc, alpha, &prev)?;
            eliminate_constants(&mut xi, c, |d| (tc.length(d), d), |d| self.phi_at(p, d))?;
            xi
        };
        check_kl_shape(&result, c, || format!("φ for coset {} (Path B)", tc.label(c)))?;
        self.memo.insert((p, c), result.clone());
        Ok(result)
    }
}

pub fn phi_direct(tc: &ThetaCosets<'_>, lambda: &Weight) -> Result<Vec<HeckeElt>, Error> {
    PhiDirect::new(tc).phi_all(lambda)
}

/// Everything computed for one `(Θ, λ)`.
#[derive(Clone, Debug)]
pub struct KLTable {
    pub idata: IntegralData,
    pub models: Vec<IntegralModel>,
    pub bases: Vec<ModelBasis>,
    pub phi: Vec<HeckeElt>,
}

impl KLTable {
    pub fn compute(tc: &ThetaCosets<'_>, lambda: &Weight) -> Result<Self, Error> {
        let idata = integral_data(tc, lambda)?;
        let models = build_all_models(tc, &idata)?;
        let bases = models
            .iter()
            .map(|m| kl_basis_model(tc.group(), m))
            .collect::<Result<Vec<_>, _>>()?;
        let phi = phi_transport(tc, &idata, &models, &bases)?;
        Ok(Self {
            idata,
            models,
            bases,
            phi,
        })
    }

    pub fn lambda(&self) -> &Weight {
        &self.idata.lambda
    }

    /// `P^{u,λ}_{CD}` on global cosets; zero across double cosets.
    pub fn poly(&self, c: usize, d: usize) -> LaurentPoly {
        self.phi[c].coeff(d)
    }

    /// The model containing global coset `c`, and `c|_λ`.
    pub fn model_of(&self, c: usize) -> (&IntegralModel, usize) {
        let m = &self.models[self.idata.double_coset_of[c]];
        (m, m.restrict(c).expect("every coset lies in its model"))
    }

    /// `D ≤_{u,λ} C` for global cosets (false across double cosets).
    pub fn model_leq(&self, g: &WeylGroup, d: usize, c: usize) -> bool {
        let k = self.idata.double_coset_of[c];
        if self.idata.double_coset_of[d] != k {
            return false;
        }
        let m = &self.models[k];
        m.leq(g, m.restrict(d).unwrap(), m.restrict(c).unwrap())
    }
}

/// Structural checks on a computed table: `qZ[q]` off the diagonal, support
/// in `{D ≤_{u,λ} C}` within the double coset, unitriangularity and parity.
/// Returns one message per violation.
pub fn structural_violations(tc: &ThetaCosets<'_>, kl: &KLTable) -> Vec<String> {
    let g = tc.group();
    let mut out = Vec::new();
    for (k, (m, b)) in kl.models.iter().zip(&kl.bases).enumerate() {
        for f in 0..m.len() {
            for (e, p) in b.psi[f].iter() {
                if e == f {
                    if !p.is_one() {
                        out.push(format!("model {k}: diagonal P at {f} is {p}"));
                    }
                    continue;
                }
                if !p.in_qzq() {
                    out.push(format!("model {k}: P[{f},{e}] = {p} not in qZ[q]"));
                }
                if !m.less(g, e, f) {
                    out.push(format!("model {k}: P[{f},{e}] = {p} outside {{G < F}}"));
                }
                if m.length(e) >= m.length(f) {
                    out.push(format!("model {k}: P[{f},{e}] = {p} breaks unitriangularity"));
                }
                let d = m.length(f) as i32 - m.length(e) as i32;
                if !p.parity_homogeneous(d) {
                    out.push(format!("model {k}: P[{f},{e}] = {p} has wrong parity (want {d} mod 2)"));
                }
            }
        }
    }
    for c in 0..tc.len() {
        for (d, p) in kl.phi[c].iter() {
            if d != c && !kl.model_leq(g, d, c) {
                out.push(format!("φ({}) has {p} at {} outside its support", tc.label(c), tc.label(d)));
            }
        }
        if !kl.phi[c].coeff(c).is_one() {
            out.push(format!("φ({}) has leading coefficient ≠ 1", tc.label(c)));
        }
    }
    out
}

/// Result of comparing `P_{wv}` with `q^{ℓ(w)−ℓ(v)} P_{v,w}(q^{−2})`.
#[derive(Clone, Debug)]
pub struct ClassicalRelation {
    pub pairs_compared: usize,
    pub mismatch: Option<(WeylElt, WeylElt, LaurentPoly, LaurentPoly)>,
}

impl ClassicalRelation {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Requires `Θ = ∅` and integral regular `λ`; compares against the
/// R-polynomial oracle on all pairs `v ≤ w` (and zero elsewhere).
pub fn kl_classical_relation_check(g: &WeylGroup, lambda: &Weight) -> Result<ClassicalRelation, Error> {
    let rs = g.root_system();
    let flags = rs.weight_flags(lambda)?;
    if !flags.integral || !flags.regular {
        return Err(Error::Precondition(
            "the classical relation needs an integral regular λ".into(),
        ));
    }
    let tc = ThetaCosets::build(g, &[])?;
    let kl = KLTable::compute(&tc, lambda)?;
    let classical = oracle::classical_kl(g)?;
    let mut pairs = 0;
    for w in g.elements() {
        let cw = tc.coset_of(w);
        for v in g.elements() {
            let cv = tc.coset_of(v);
            let ours = kl.poly(cw, cv);
            let theirs = match classical.get(v, w) {
                Some(p) => {
                    pairs += 1;
                    p.substitute_power(-2)
                        .shift((g.length(w) as i32) - (g.length(v) as i32))
                }
                None => LaurentPoly::zero(),
            };
            if ours != theirs {
                return Ok(ClassicalRelation {
                    pairs_compared: pairs,
                    mismatch: Some((w, v, ours, theirs)),
                });
            }
        }
    }
    Ok(ClassicalRelation {
        pairs_compared: pairs,
        mismatch: None,
    })
}

/// Polynomials of one model as `(F, G) ↦ P`, nonzero entries only.
pub fn poly_table(basis: &ModelBasis) -> BTreeMap<(usize, usize), LaurentPoly> {
    let mut t = BTreeMap::new();
    for (f, x) in basis.psi.iter().enumerate() {
        for (e, p) in x.iter() {
            t.insert((f, e), p.clone());
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::{CorootValue, RootSystem};
    use num_rational::BigRational;

    fn lambda7() -> Weight {
        let v = |r: i64, t: i64| CorootValue {
            rational: BigRational::from_integer(r.into()),
            transcendental: vec![BigRational::from_integer(t.into())],
        };
        Weight::new(vec![v(-5, -4), v(-5, 4), v(-5, 0)]).unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn a3_golden_table() {
        let g = WeylGroup::enumerate(RootSystem::from_name("A3").unwrap()).unwrap();
        let tc = ThetaCosets::build(&g, &[0, 1]).unwrap();
        let kl = KLTable::compute(&tc, &lambda7()).unwrap();
        let b = &kl.bases[0];
        assert_eq!(b.poly(1, 0), p("q"));
        assert_eq!(b.poly(2, 1), p("q"));
        assert_eq!(b.poly(2, 0), p("0"));
        for f in 0..3 {
            assert!(b.poly(f, f).is_one());
        }
        assert_eq!(kl.bases[1].psi.len(), 1);
        let sgsb = tc.coset_of(g.from_word(&[2, 1]));
        let sp = global_space(&tc);
        assert_eq!(kl.phi[sgsb], HeckeElt::basis(sp.clone(), sgsb));
        let mut w0 = HeckeElt::basis(sp.clone(), 3);
        w0.add_term(1, &p("q"));
        assert_eq!(kl.phi[3], w0);
        assert_eq!(kl.phi[0], HeckeElt::basis(sp, 0));
        assert_eq!(phi_direct(&tc, &lambda7()).unwrap(), kl.phi);
        assert!(structural_violations(&tc, &kl).is_empty());
    }

    #[test]
    fn a1_model() {
        let g = WeylGroup::enumerate(RootSystem::from_name("A1").unwrap()).unwrap();
        let tc = ThetaCosets::build(&g, &[]).unwrap();
        let kl = KLTable::compute(&tc, &Weight::from_integers(&[-1])).unwrap();
        assert_eq!(kl.bases[0].poly(1, 0), p("q"));
    }

    #[test]
    fn classical_small() {
        for name in ["A1", "A2", "B2"] {
            let g = WeylGroup::enumerate(RootSystem::from_name(name).unwrap()).unwrap();
            let lam = g.root_system().rho().scaled(-1);
            let r = kl_classical_relation_check(&g, &lam).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.mismatch);
        }
    }

    #[test]
    fn theta_everything_is_trivial() {
        let g = WeylGroup::enumerate(RootSystem::from_name("B2").unwrap()).unwrap();
        let tc = ThetaCosets::build(&g, &[0, 1]).unwrap();
        let lam = Weight::from_integers(&[-1, -1]);
        let phi = phi_direct(&tc, &lam).unwrap();
        assert_eq!(phi, vec![HeckeElt::basis(global_space(&tc), 0)]);
    }
}
