#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use num_rational::BigRational;
use wkl::cosetlab::{
    conjugate_model, descent_chain, integral_data, IntegralData, ThetaCosets,
};
use wkl::hecke::{restrict_lambda, right_mult, t_alpha, t_alpha_model_at};
use wkl::klengine::{phi_direct, KLTable};
use wkl::rootsystem::{is_integral, CorootValue};
use wkl::weylgroup::ReflectionSubgroup;
use wkl::{RootSystem, Weight, WeylElt, WeylGroup};

pub const PATH_TYPES: [&str; 6] = ["A1", "A2", "B2", "A3", "B3", "G2"];
pub const RANK3_TYPES: [&str; 7] = ["A1", "A2", "B2", "G2", "A3", "B3", "C3"];

pub fn group(name: &str) -> WeylGroup {
    WeylGroup::enumerate(RootSystem::from_name(name).unwrap()).unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `a/b + Σ c_k t_k` with `k` transcendentals.
pub fn cv(a: i64, b: i64, t: &[i64], k: usize) -> CorootValue {
    let mut tr = vec![q(0, 1); k];
    for (i, &c) in t.iter().enumerate() {
        tr[i] = q(c, 1);
    }
    CorootValue {
        rational: q(a, b),
        transcendental: tr,
    }
}

pub fn lambda7() -> Weight {
    Weight::new(vec![cv(-5, 1, &[-4], 1), cv(-5, 1, &[4], 1), cv(-5, 1, &[], 1)]).unwrap()
}

/// At least five integrality patterns per rank: integral regular, fully
/// non-integral, mixed with one transcendental, half-integers, thirds, and
/// a single non-integral coordinate.
pub fn lambda_catalog(rank: usize) -> Vec<(&'static str, Weight)> {
    let n = rank;
    let build = |f: &dyn Fn(usize) -> CorootValue| Weight::new((0..n).map(f).collect()).unwrap();
    let mixed_c = [-4, 4, 0, 0, 0, 0];
    let mut out = vec![
        ("minus-rho", build(&|_| cv(-1, 1, &[], 0))),
        (
            "generic",
            build(&|i| {
                let mut t = vec![0; n];
                t[i] = 1;
                cv(-1, 1, &t, n)
            }),
        ),
        ("mixed", build(&|i| cv(-5, 1, &[mixed_c[i]], 1))),
        (
            "half-first",
            build(&|i| if i == 0 { cv(-1, 2, &[], 0) } else { cv(-1, 1, &[], 0) }),
        ),
        ("halves", build(&|_| cv(-1, 2, &[], 0))),
        ("thirds", build(&|_| cv(-1, 3, &[], 0))),
        (
            "last-generic",
            build(&|i| if i == n - 1 { cv(-1, 1, &[1], 1) } else { cv(-1, 1, &[], 1) }),
        ),
    ];
    if n == 1 {
        out.retain(|(name, _)| *name != "half-first" && *name != "last-generic");
    }
    out
}

pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect())
        .collect()
}

fn scope(g: &WeylGroup, theta: &[usize], lambda: &Weight) -> String {
    format!("{} Θ={theta:?} λ=({lambda})", g.root_system().name())
}

fn push(out: &mut Vec<String>, cond: bool, msg: impl FnOnce() -> String) {
    if !cond && out.len() < 20 {
        out.push(msg());
    }
}

fn root_set(g: &WeylGroup, u: WeylElt, roots: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    roots.into_iter().map(|r| g.act_on_root(u, r)).collect()
}

fn integral_roots(rs: &RootSystem, lambda: &Weight) -> BTreeSet<usize> {
    (0..rs.num_roots())
        .filter(|&r| is_integral(&rs.pair(r, lambda).unwrap()))
        .collect()
}

/// Parts (a)–(f) of the lemma on non-integral reflections.
pub fn non_integral_reflection_lemma(g: &WeylGroup, lambda: &Weight) -> Vec<String> {
    let rs = g.root_system();
    let tc = ThetaCosets::build(g, &[]).unwrap();
    let d = integral_data(&tc, lambda).unwrap();
    let mut out = Vec::new();
    let sigma = integral_roots(rs, lambda);
    let mut w_l: Vec<WeylElt> = d.w_lambda.elements().to_vec();
    w_l.sort();
    for u in g.elements() {
        let ul = g.act_on_weight(u, lambda).unwrap();
        let du = integral_data(&tc, &ul).unwrap();
        let w = g.word_string(u);
        push(&mut out, root_set(g, u, sigma.iter().copied()) == integral_roots(rs, &ul), || {
            format!("(a) u = {w}")
        });
        let mut conj: Vec<WeylElt> = w_l
            .iter()
            .map(|&v| g.mul(g.mul(u, v), g.inverse(u)))
            .collect();
        conj.sort();
        let mut w_ul: Vec<WeylElt> = du.w_lambda.elements().to_vec();
        w_ul.sort();
        push(&mut out, conj == w_ul, || format!("(d) u = {w}"));
        if d.a_lambda.contains(&u) {
            push(
                &mut out,
                root_set(g, u, d.sigma_lambda_pos.iter().copied())
                    == du.sigma_lambda_pos.iter().copied().collect(),
                || format!("(b) u = {w}"),
            );
            push(
                &mut out,
                root_set(g, u, d.pi_lambda().iter().copied())
                    == du.pi_lambda().iter().copied().collect(),
                || format!("(c) u = {w}"),
            );
        }
    }
    for beta in 0..rs.rank() {
        let sb = g.from_word(&[beta]);
        let in_a = d.a_lambda.contains(&sb);
        push(&mut out, in_a == !d.pi_lambda().contains(&beta), || {
            format!("(f) β = {}", rs.root_name(beta))
        });
        if in_a {
            let db = integral_data(&tc, &lambda.simple_reflect(rs, beta)).unwrap();
            for &u in &d.a_lambda {
                push(&mut out, db.a_lambda.contains(&g.mul(u, sb)), || {
                    format!("(e) u = {}, β = {}", g.word_string(u), rs.root_name(beta))
                });
            }
        }
    }
    out.into_iter().map(|m| format!("{} λ=({lambda}): {m}", rs.name())).collect()
}

/// Bruhat order of `(W_λ, Π_λ)` from reflection chains with intrinsic length.
pub fn reflection_chain_order(g: &WeylGroup, sub: &ReflectionSubgroup) -> HashSet<(WeylElt, WeylElt)> {
    let refl: Vec<WeylElt> = sub.positive_roots().iter().map(|&r| g.reflection(r)).collect();
    let mut rel = HashSet::new();
    for &v in sub.elements() {
        let mut stack = vec![v];
        let mut seen = HashSet::from([v]);
        while let Some(x) = stack.pop() {
            rel.insert((v, x));
            for &t in &refl {
                let y = g.mul(x, t);
                if sub.length(y) > sub.length(x) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    rel
}

/// The intrinsic order of `W_λ` against the chain oracle, and
/// `v ≤_λ w ⟹ uv ≤ uw` for `u ∈ A_λ`.
pub fn bruhat_corollary(g: &WeylGroup, lambda: &Weight) -> Vec<String> {
    let tc = ThetaCosets::build(g, &[]).unwrap();
    let d = integral_data(&tc, lambda).unwrap();
    let sub = &d.w_lambda;
    let chain = reflection_chain_order(g, sub);
    let mut out = Vec::new();
    for &v in sub.elements() {
        for &w in sub.elements() {
            let leq = chain.contains(&(v, w));
            push(&mut out, leq == sub.bruhat_leq(g, v, w), || {
                format!("≤_λ oracle: v = {}, w = {}", g.word_string(v), g.word_string(w))
            });
            if leq {
                for &u in &d.a_lambda {
                    push(&mut out, g.bruhat_leq(g.mul(u, v), g.mul(u, w)), || {
                        format!(
                            "u = {}, v = {}, w = {}",
                            g.word_string(u),
                            g.word_string(v),
                            g.word_string(w)
                        )
                    });
                }
            }
        }
    }
    out
}

/// `s_α u ∈ A_λ` or `s_α u ∈ u W_λ`.
pub fn double_coset_lemma(g: &WeylGroup, lambda: &Weight) -> Vec<String> {
    let tc = ThetaCosets::build(g, &[]).unwrap();
    let d = integral_data(&tc, lambda).unwrap();
    let mut out = Vec::new();
    for &u in &d.a_lambda {
        for a in 0..g.rank() {
            let x = g.left_simple(a, u);
            let ok = d.a_lambda.contains(&x) || d.w_lambda.contains(g.mul(g.inverse(u), x));
            push(&mut out, ok, || format!("u = {}, α = {a}", g.word_string(u)));
        }
    }
    out
}

/// Unique smallest right coset per double coset, containing `A_λ` ∩ double
/// coset, with its shortest element in `A_λ`.
pub fn unique_smallest_coset(tc: &ThetaCosets<'_>, d: &IntegralData) -> Vec<String> {
    let g = tc.group();
    let mut out = Vec::new();
    for cosets in &d.double_cosets {
        let minimal: Vec<usize> = cosets
            .iter()
            .copied()
            .filter(|&c| cosets.iter().all(|&e| e == c || !tc.less(e, c)))
            .collect();
        push(&mut out, minimal.len() == 1, || format!("{} minimal cosets in {cosets:?}", minimal.len()));
        let m = minimal[0];
        push(&mut out, cosets.iter().all(|&e| tc.leq(m, e)), || {
            format!("minimum {} not below all of {cosets:?}", tc.label(m))
        });
        let members: HashSet<usize> = cosets.iter().copied().collect();
        for &u in &d.a_lambda {
            if members.contains(&tc.coset_of(u)) {
                push(&mut out, tc.coset_of(u) == m, || {
                    format!("A_λ element {} outside the smallest coset", g.word_string(u))
                });
            }
        }
        push(&mut out, d.a_lambda.contains(&tc.shortest(m)), || {
            format!("shortest of {} not in A_λ", tc.label(m))
        });
    }
    out
}

/// Order preservation of `ind_λ`, the conjugation squares and the
/// descent-chain conditions (a)–(e), for one `(Θ, λ)`.
pub fn model_properties(tc: &ThetaCosets<'_>, lambda: &Weight) -> Vec<String> {
    let g = tc.group();
    let rs = g.root_system();
    let kl = KLTable::compute(tc, lambda).unwrap();
    let mut out = unique_smallest_coset(tc, &kl.idata);
    for m in &kl.models {
        for e in 0..m.len() {
            for f in 0..m.len() {
                if m.leq(g, e, f) {
                    push(&mut out, tc.leq(m.ind(e), m.ind(f)), || {
                        format!("ind_λ not monotone on u = {}", g.word_string(m.u))
                    });
                }
            }
        }
        for beta in 0..rs.rank() {
            if kl.idata.pi_lambda().contains(&beta) {
                continue;
            }
            match conjugate_model(tc, m, beta) {
                Err(e) => push(&mut out, false, || format!("conjugation by β = {beta}: {e}")),
                Ok(cj) => {
                    for e in 0..m.len() {
                        for f in 0..m.len() {
                            push(
                                &mut out,
                                m.leq(g, e, f) == cj.model.leq(g, cj.map[e], cj.map[f]),
                                || format!("conjugation by {beta} not an order isomorphism"),
                            );
                        }
                    }
                    let back = conjugate_model(tc, &cj.model, beta).unwrap();
                    push(
                        &mut out,
                        back.model.u == m.u
                            && (0..m.len()).all(|e| back.map[cj.map[e]] == e),
                        || format!("double conjugation by {beta} is not the identity"),
                    );
                }
            }
        }
    }
    for c in 0..tc.len() {
        let u = kl.idata.representative(c);
        if tc.coset_of(u) == c {
            push(&mut out, descent_chain(tc, &kl.idata, c).is_err(), || {
                format!("descent chain accepted minimal coset {}", tc.label(c))
            });
            continue;
        }
        let dc = match descent_chain(tc, &kl.idata, c) {
            Ok(x) => x,
            Err(e) => {
                push(&mut out, false, || format!("descent chain at {}: {e}", tc.label(c)));
                continue;
            }
        };
        let label = tc.label(c);
        // (a) each β_{i+1} is non-integral for z_i^{-1}λ
        let mut zi = g.identity();
        for &b in &dc.chain {
            let mu = g.act_on_weight(g.inverse(zi), lambda).unwrap();
            push(&mut out, !is_integral(&rs.pair(b, &mu).unwrap()), || {
                format!("(a) at {label}")
            });
            zi = g.right_simple(zi, b);
        }
        push(&mut out, zi == dc.z, || format!("z mismatch at {label}"));
        // (b) α ∈ Π_λ and z^{-1}α ∈ Π ∩ Π_{z^{-1}λ}
        let mu = g.act_on_weight(g.inverse(dc.z), lambda).unwrap();
        let a1 = g.act_on_root(g.inverse(dc.z), dc.alpha);
        let dmu = integral_data(tc, &mu).unwrap();
        push(
            &mut out,
            kl.idata.pi_lambda().contains(&dc.alpha)
                && a1 < rs.rank()
                && dmu.pi_lambda().contains(&a1),
            || format!("(b) at {label}"),
        );
        // (c) C s_α <_{u,λ} C
        let csa = tc.times(c, g.reflection(dc.alpha));
        push(&mut out, kl.model_leq(g, csa, c) && csa != c, || format!("(c) at {label}"));
        // (d) Cz < C when the chain is nonempty; (e) C s_α z < C z
        let cz = tc.times(c, dc.z);
        if !dc.chain.is_empty() {
            push(&mut out, tc.less(cz, c), || format!("(d) at {label}"));
        }
        push(&mut out, tc.less(tc.times(csa, dc.z), cz), || format!("(e) at {label}"));
    }
    let sc = scope(g, tc.theta(), lambda);
    out.into_iter().map(|m| format!("{sc}: {m}")).collect()
}

/// For each non-minimal `C`: `T_{α'} φ_μ(C z s_{α'})`, moved back by `z^{-1}`
/// and restricted, equals `T_α^{u,λ} ψ((C s_α)|_λ)`, where `μ = z^{-1}λ`.
pub fn w2_realizability(tc: &ThetaCosets<'_>, lambda: &Weight) -> Vec<String> {
    let g = tc.group();
    let kl = KLTable::compute(tc, lambda).unwrap();
    let mut out = Vec::new();
    for c in 0..tc.len() {
        if tc.coset_of(kl.idata.representative(c)) == c {
            continue;
        }
        let dc = descent_chain(tc, &kl.idata, c).unwrap();
        let zinv = g.inverse(dc.z);
        let mu = g.act_on_weight(zinv, lambda).unwrap();
        let a1 = g.act_on_root(zinv, dc.alpha);
        let phi_mu = phi_direct(tc, &mu).unwrap();
        let start = tc.times(tc.times(c, dc.z), g.from_word(&[a1]));
        let x = t_alpha(tc, a1, &phi_mu[start]).unwrap();
        let y = right_mult(tc, &x, zinv).unwrap();
        let parts = restrict_lambda(tc, &kl.idata, &kl.models, &y).unwrap();
        let k = kl.idata.double_coset_of[c];
        let (m, _) = kl.model_of(c);
        let j = m.simple_position(dc.alpha).unwrap();
        let csa = m.restrict(tc.times(c, g.reflection(dc.alpha))).unwrap();
        let rhs = t_alpha_model_at(m, j, &kl.bases[k].psi[csa]).unwrap();
        let others_zero = parts.iter().enumerate().all(|(i, p)| i == k || p.is_zero());
        push(&mut out, parts[k] == rhs && others_zero, || {
            format!("{}: W.2 transport fails at {}", scope(g, tc.theta(), lambda), tc.label(c))
        });
    }
    out
}
