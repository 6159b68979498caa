//! The serializable result of one invocation; text and LaTeX are rendered
//! from the same structure.

use serde::{Deserialize, Serialize};
use wkl::charformula::{CharacterFormula, Mode, MultiplicityRow as CoreMultiplicityRow};
use wkl::cosetlab::ThetaCosets;
use wkl::klengine::{poly_table, KLTable};
use wkl::oracle::OracleReport;
use wkl::{LaurentPoly, RootSystem, Weight, WeylElt, WeylGroup};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub context: Context,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integral: Option<IntegralInfo>,
    pub cosets: Vec<CosetRow>,
    pub models: Vec<ModelInfo>,
    pub kl_polynomials: Vec<PolyEntry>,
    pub characters: Vec<CharacterRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub multiplicities: Vec<MultiplicityRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<OracleReport>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Context {
    pub root_system: String,
    pub weyl_order: usize,
    pub theta: Vec<String>,
    pub lambda: String,
    pub antidominant: bool,
    pub regular: bool,
    pub integral: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralInfo {
    pub sigma_lambda_positive: Vec<String>,
    pub pi_lambda: Vec<String>,
    pub a_lambda: Vec<String>,
    pub a_theta_lambda: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetRow {
    pub id: usize,
    pub longest: String,
    pub shortest: String,
    pub length: usize,
    /// Cosets covered by this one in the Bruhat order.
    pub covers: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelCoset {
    pub label: String,
    pub induced: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelInfo {
    pub u: String,
    pub theta_u_lambda: Vec<String>,
    pub pi_lambda: Vec<String>,
    pub cosets: Vec<ModelCoset>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    pub c: String,
    pub d: String,
    pub poly: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub standard: String,
    pub coeff: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRow {
    pub irreducible: String,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityEntry {
    pub irreducible: String,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityRow {
    pub standard: String,
    pub entries: Vec<MultiplicityEntry>,
}

pub fn context(g: &WeylGroup, theta: &[usize], lambda: &Weight) -> Result<Context, wkl::Error> {
    let rs = g.root_system();
    let flags = rs.weight_flags(lambda)?;
    Ok(Context {
        root_system: rs.name(),
        weyl_order: g.order(),
        theta: theta.iter().map(|&i| rs.root_name(i)).collect(),
        lambda: lambda.to_string(),
        antidominant: flags.antidominant,
        regular: flags.regular,
        integral: flags.integral,
        mode: None,
    })
}

fn roots(rs: &RootSystem, v: &[usize]) -> Vec<String> {
    v.iter().map(|&r| rs.root_name(r)).collect()
}

fn words(g: &WeylGroup, v: &[WeylElt]) -> Vec<String> {
    v.iter().map(|&w| g.word_string(w)).collect()
}

pub fn integral_info(g: &WeylGroup, kl: &KLTable) -> IntegralInfo {
    let rs = g.root_system();
    IntegralInfo {
        sigma_lambda_positive: roots(rs, &kl.idata.sigma_lambda_pos),
        pi_lambda: roots(rs, kl.idata.pi_lambda()),
        a_lambda: words(g, &kl.idata.a_lambda),
        a_theta_lambda: words(g, &kl.idata.a_theta_lambda),
    }
}

pub fn coset_rows(tc: &ThetaCosets<'_>) -> Vec<CosetRow> {
    let g = tc.group();
    (0..tc.len())
        .map(|c| CosetRow {
            id: c,
            longest: tc.label(c),
            shortest: g.word_string(tc.shortest(c)),
            length: tc.length(c),
            covers: (0..tc.len())
                .filter(|&d| tc.length(d) + 1 == tc.length(c) && tc.less(d, c))
                .map(|d| tc.label(d))
                .collect(),
        })
        .collect()
}

pub fn model_infos(tc: &ThetaCosets<'_>, kl: &KLTable) -> Vec<ModelInfo> {
    let g = tc.group();
    let rs = g.root_system();
    kl.models
        .iter()
        .map(|m| ModelInfo {
            u: g.word_string(m.u),
            theta_u_lambda: roots(rs, &m.theta_roots()),
            pi_lambda: roots(rs, m.pi_lambda()),
            cosets: (0..m.len())
                .map(|e| ModelCoset {
                    label: m.label(g, e),
                    induced: tc.label(m.ind(e)),
                })
                .collect(),
        })
        .collect()
}

/// Nonzero `P^{u,λ}_{EF}` of every model, labelled by model cosets.
pub fn poly_entries(tc: &ThetaCosets<'_>, kl: &KLTable) -> Vec<PolyEntry> {
    let g = tc.group();
    let mut out = Vec::new();
    for (m, b) in kl.models.iter().zip(&kl.bases) {
        for ((e, f), p) in poly_table(b) {
            out.push(PolyEntry {
                model: Some(g.word_string(m.u)),
                c: m.label(g, e),
                d: m.label(g, f),
                poly: p,
            });
        }
    }
    out
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Regular => "regular",
        Mode::Singular => "singular",
        Mode::Verma => "verma",
    }
}

pub fn character_rows(tc: &ThetaCosets<'_>, cf: &CharacterFormula) -> Vec<CharacterRow> {
    cf.rows
        .iter()
        .map(|r| CharacterRow {
            irreducible: r.irreducible.render(tc),
            entries: r
                .entries
                .iter()
                .map(|&(l, a)| Entry {
                    standard: l.render(tc),
                    coeff: a,
                })
                .collect(),
        })
        .collect()
}

pub fn multiplicity_rows(tc: &ThetaCosets<'_>, rows: &[CoreMultiplicityRow]) -> Vec<MultiplicityRow> {
    rows.iter()
        .map(|r| MultiplicityRow {
            standard: r.standard.render(tc),
            entries: r
                .entries
                .iter()
                .map(|&(l, a)| MultiplicityEntry {
                    irreducible: l.render(tc),
                    multiplicity: a,
                })
                .collect(),
        })
        .collect()
}
