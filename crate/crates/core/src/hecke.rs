//! The modules `H_Θ` (basis `δ_C` over right `W_Θ`-cosets) and
//! `H_{Θ(u,λ)}` (basis over the cosets of one integral model), with the
//! operators `T_α`, the right `W`-action and the restriction `(-)|_λ`.
//!
//! Every element carries the space it lives in; combining elements of
//! different spaces is an error rather than a silent relabeling.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::cosetlab::{Conjugation, CosetMove, IntegralData, IntegralModel, ThetaCosets};
use crate::laurent::LaurentPoly;
use crate::rootsystem::Weight;
use crate::weylgroup::{WeylElt, WeylGroup};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    /// `H_Θ` for the given sorted `Θ`.
    Global { theta: Vec<usize> },
    /// `H_{Θ(u,λ)}`.
    Model { u: WeylElt, lambda: Weight },
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Global { theta } => write!(f, "H_Θ with Θ = {theta:?}"),
            Space::Model { u, lambda } => write!(f, "H_Θ(u,λ) with u = {u}, λ = ({lambda})"),
        }
    }
}

pub fn global_space(tc: &ThetaCosets<'_>) -> Arc<Space> {
    Arc::new(Space::Global {
        theta: tc.theta().to_vec(),
    })
}

pub fn model_space(model: &IntegralModel) -> Arc<Space> {
    Arc::new(Space::Model {
        u: model.u,
        lambda: model.lambda.clone(),
    })
}

#[derive(Clone, Debug)]
pub struct HeckeElt {
    space: Arc<Space>,
    coeffs: BTreeMap<usize, LaurentPoly>,
}

impl PartialEq for HeckeElt {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.coeffs == other.coeffs
    }
}

impl Eq for HeckeElt {}

impl HeckeElt {
    pub fn zero(space: Arc<Space>) -> Self {
        Self {
            space,
            coeffs: BTreeMap::new(),
        }
    }

    /// `δ_c`.
    pub fn basis(space: Arc<Space>, c: usize) -> Self {
        let mut x = Self::zero(space);
        x.coeffs.insert(c, LaurentPoly::one());
        x
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, c: usize) -> LaurentPoly {
        self.coeffs.get(&c).cloned().unwrap_or_default()
    }

    /// Nonzero coefficients in ascending basis order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &LaurentPoly)> {
        self.coeffs.iter().map(|(&c, p)| (c, p))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    fn check(&self, other: &HeckeElt) -> Result<(), Error> {
        if Arc::ptr_eq(&self.space, &other.space) || self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(
                self.space.to_string(),
                other.space.to_string(),
            ))
        }
    }

    /// `self += p·δ_c`.
    pub fn add_term(&mut self, c: usize, p: &LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let e = self.coeffs.entry(c).or_default();
        *e += p;
        if e.is_zero() {
            self.coeffs.remove(&c);
        }
    }

    /// `self += p·other`.
    pub fn add_scaled(&mut self, p: &LaurentPoly, other: &HeckeElt) -> Result<(), Error> {
        self.check(other)?;
        for (c, x) in other.iter() {
            self.add_term(c, &(p * x));
        }
        Ok(())
    }

    pub fn add(&mut self, other: &HeckeElt) -> Result<(), Error> {
        self.add_scaled(&LaurentPoly::one(), other)
    }

    pub fn sub(&mut self, other: &HeckeElt) -> Result<(), Error> {
        self.add_scaled(&LaurentPoly::constant(-1), other)
    }

    pub fn scaled(&self, p: &LaurentPoly) -> HeckeElt {
        let mut x = HeckeElt::zero(self.space.clone());
        for (c, y) in self.iter() {
            x.add_term(c, &(p * y));
        }
        x
    }

    /// Relabels basis indices through `f` into `space`.
    pub fn relabel(&self, space: Arc<Space>, f: impl Fn(usize) -> usize) -> HeckeElt {
        let mut x = HeckeElt::zero(space);
        for (c, p) in self.iter() {
            x.add_term(f(c), p);
        }
        x
    }

    /// Text form with caller-provided basis labels, e.g. `q·δ[s_α] + δ[1]`.
    pub fn render(&self, label: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .rev()
            .map(|(&c, p)| {
                if p.is_one() {
                    format!("δ[{}]", label(c))
                } else if p.terms().len() == 1 {
                    format!("{p}·δ[{}]", label(c))
                } else {
                    format!("({p})·δ[{}]", label(c))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn three_case(
    x: &HeckeElt,
    mv: impl Fn(usize) -> (CosetMove, usize),
) -> HeckeElt {
    let q = LaurentPoly::q();
    let qi = LaurentPoly::monomial(1, -1);
    let mut out = HeckeElt::zero(x.space.clone());
    for (c, p) in x.iter() {
        match mv(c) {
            (CosetMove::Fix, _) => {}
            (CosetMove::Raise, t) => {
                out.add_term(c, &(&q * p));
                out.add_term(t, p);
            }
            (CosetMove::Lower, t) => {
                out.add_term(c, &(&qi * p));
                out.add_term(t, p);
            }
        }
    }
    out
}

fn expect_space(x: &HeckeElt, space: &Space) -> Result<(), Error> {
    if x.space.as_ref() == space {
        Ok(())
    } else {
        Err(Error::SpaceMismatch(x.space.to_string(), space.to_string()))
    }
}

fn expect_global(tc: &ThetaCosets<'_>, x: &HeckeElt) -> Result<(), Error> {
    match x.space.as_ref() {
        Space::Global { theta } if theta == tc.theta() => Ok(()),
        s => Err(Error::SpaceMismatch(
            s.to_string(),
            global_space(tc).to_string(),
        )),
    }
}

/// `T_α` on `H_Θ` for the simple index `i`.
pub fn t_alpha(tc: &ThetaCosets<'_>, i: usize, x: &HeckeElt) -> Result<HeckeElt, Error> {
    expect_global(tc, x)?;
    Ok(three_case(x, |c| tc.times_simple(c, i)))
}

/// `T_α^{u,λ}` on the model's module for the root `alpha ∈ Π_λ`.
pub fn t_alpha_model(
    model: &IntegralModel,
    alpha: usize,
    x: &HeckeElt,
) -> Result<HeckeElt, Error> {
    let j = model
        .simple_position(alpha)
        .ok_or_else(|| Error::Precondition(format!("root #{alpha} is not in Π_λ")))?;
    t_alpha_model_at(model, j, x)
}

/// `T_α^{u,λ}` for the `j`-th simple root of `Π_λ`.
pub fn t_alpha_model_at(model: &IntegralModel, j: usize, x: &HeckeElt) -> Result<HeckeElt, Error> {
    expect_space(
        x,
        &Space::Model {
            u: model.u,
            lambda: model.lambda.clone(),
        },
    )?;
    Ok(three_case(x, |e| model.times_simple(e, j)))
}

/// `x·s_i`: relabels `δ_C ↦ δ_{Cs_i}`.
pub fn right_mult_simple(tc: &ThetaCosets<'_>, x: &HeckeElt, i: usize) -> Result<HeckeElt, Error> {
    expect_global(tc, x)?;
    Ok(x.relabel(x.space.clone(), |c| tc.times_simple(c, i).1))
}

/// `x·w` for any group element.
pub fn right_mult(tc: &ThetaCosets<'_>, x: &HeckeElt, w: WeylElt) -> Result<HeckeElt, Error> {
    expect_global(tc, x)?;
    Ok(x.relabel(x.space.clone(), |c| tc.times(c, w)))
}

/// `(-)|_λ`: one component per model, in `A_{Θ,λ}` order.
pub fn restrict_lambda(
    tc: &ThetaCosets<'_>,
    idata: &IntegralData,
    models: &[IntegralModel],
    x: &HeckeElt,
) -> Result<Vec<HeckeElt>, Error> {
    expect_global(tc, x)?;
    let mut parts: Vec<HeckeElt> = models.iter().map(|m| HeckeElt::zero(model_space(m))).collect();
    for (c, p) in x.iter() {
        let k = idata.double_coset_of[c];
        let e = models[k]
            .restrict(c)
            .ok_or_else(|| Error::Invariant(format!("coset {c} missing from its model")))?;
        parts[k].add_term(e, p);
    }
    Ok(parts)
}

/// Inverse of [`restrict_lambda`] on one model's component.
pub fn induce(tc: &ThetaCosets<'_>, model: &IntegralModel, x: &HeckeElt) -> Result<HeckeElt, Error> {
    expect_space(
        x,
        &Space::Model {
            u: model.u,
            lambda: model.lambda.clone(),
        },
    )?;
    Ok(x.relabel(global_space(tc), |e| model.ind(e)))
}

/// `s_β(-)s_β` from the source model's module to the conjugated model's.
pub fn conjugate(cj: &Conjugation, source: &IntegralModel, x: &HeckeElt) -> Result<HeckeElt, Error> {
    expect_space(
        x,
        &Space::Model {
            u: source.u,
            lambda: source.lambda.clone(),
        },
    )?;
    Ok(x.relabel(model_space(&cj.model), |e| cj.map[e]))
}

/// Basis labels for [`HeckeElt::render`].
pub fn global_label<'a>(tc: &'a ThetaCosets<'_>) -> impl Fn(usize) -> String + 'a {
    move |c| tc.label(c)
}

pub fn model_label<'a>(g: &'a WeylGroup, m: &'a IntegralModel) -> impl Fn(usize) -> String + 'a {
    move |e| m.label(g, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosetlab::{build_all_models, integral_data};
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
    fn a3_operator_examples() {
        let g = WeylGroup::enumerate(RootSystem::from_name("A3").unwrap()).unwrap();
        let tc = ThetaCosets::build(&g, &[0, 1]).unwrap();
        let sp = global_space(&tc);
        let d0 = HeckeElt::basis(sp.clone(), 0);
        let x = t_alpha(&tc, 2, &d0).unwrap();
        assert_eq!(x.coeff(0), p("q"));
        assert_eq!(x.coeff(1), p("1"));
        assert!(t_alpha(&tc, 0, &d0).unwrap().is_zero());
        let c = tc.coset_of(g.from_word(&[2, 1]));
        let x = t_alpha(&tc, 1, &HeckeElt::basis(sp.clone(), c)).unwrap();
        assert_eq!(x.coeff(c), p("q^-1"));
        assert_eq!(x.coeff(1), p("1"));
        assert_eq!(right_mult_simple(&tc, &d0, 0).unwrap(), d0);
        let y = right_mult_simple(&tc, &HeckeElt::basis(sp.clone(), c), 1).unwrap();
        assert_eq!(y, HeckeElt::basis(sp.clone(), tc.coset_of(g.from_word(&[2]))));
    }

    #[test]
    fn quadratic_relation_and_involution() {
        for name in ["A3", "B3", "G2"] {
            let g = WeylGroup::enumerate(RootSystem::from_name(name).unwrap()).unwrap();
            for theta in [vec![], vec![0], vec![1]] {
                let tc = ThetaCosets::build(&g, &theta).unwrap();
                let sp = global_space(&tc);
                for c in 0..tc.len() {
                    let d = HeckeElt::basis(sp.clone(), c);
                    for i in 0..g.rank() {
                        let t = t_alpha(&tc, i, &d).unwrap();
                        let tt = t_alpha(&tc, i, &t).unwrap();
                        assert_eq!(tt, t.scaled(&p("q + q^-1")));
                        let back = right_mult_simple(&tc, &right_mult_simple(&tc, &d, i).unwrap(), i);
                        assert_eq!(back.unwrap(), d);
                    }
                }
            }
        }
    }

    #[test]
    fn restriction_and_space_discipline() {
        let g = WeylGroup::enumerate(RootSystem::from_name("A3").unwrap()).unwrap();
        let tc = ThetaCosets::build(&g, &[0, 1]).unwrap();
        let d = integral_data(&tc, &lambda7()).unwrap();
        let models = build_all_models(&tc, &d).unwrap();
        let sp = global_space(&tc);
        let parts = restrict_lambda(&tc, &d, &models, &HeckeElt::basis(sp.clone(), 3)).unwrap();
        assert_eq!(parts[0], HeckeElt::basis(model_space(&models[0]), 2));
        assert!(parts[1].is_zero());
        let c = tc.coset_of(g.from_word(&[2, 1]));
        let parts = restrict_lambda(&tc, &d, &models, &HeckeElt::basis(sp.clone(), c)).unwrap();
        assert_eq!(parts[1], HeckeElt::basis(model_space(&models[1]), 0));
        let zero = restrict_lambda(&tc, &d, &models, &HeckeElt::zero(sp.clone())).unwrap();
        assert!(zero.iter().all(HeckeElt::is_zero));

        let mut a = HeckeElt::basis(sp, 0);
        let b = HeckeElt::basis(model_space(&models[0]), 0);
        assert!(matches!(a.add(&b), Err(Error::SpaceMismatch(..))));
        assert!(t_alpha(&tc, 0, &b).is_err());
        assert!(t_alpha_model(&models[0], 0, &b).is_err());
        // T^{1,λ}_{α+β} fixes the identity coset; T^{1,λ}_γ raises it.
        assert!(t_alpha_model(&models[0], 3, &b).unwrap().is_zero());
        let x = t_alpha_model(&models[0], 2, &b).unwrap();
        assert_eq!(x.coeff(0), p("q"));
        assert_eq!(x.coeff(1), p("1"));
        let single = HeckeElt::basis(model_space(&models[1]), 0);
        for &r in models[1].pi_lambda() {
            assert!(t_alpha_model(&models[1], r, &single).unwrap().is_zero());
        }
    }
}
