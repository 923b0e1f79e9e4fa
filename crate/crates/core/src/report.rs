//! Report assembly: the analysis report for a module and the bound-table
//! reports, each with a canonical JSON rendering and a text rendering.
//! Identical inputs produce byte-identical output.

use crate::bounds::{config_space_rule, BoundsReport, ConfigBounds, RuleError};
use crate::characters::ClassFunction;
use crate::fimod::{DegreeError, DegreeReport, FiModule, Flag};
use crate::jsonout::J;
use crate::rational::render;
use crate::repstab::{
    decompose, fit_character_polynomial, stabilization_onset, stable_inner_product, CharFit,
    InnerProducts, MultiplicityTable, RepStabError,
};

#[derive(Debug, thiserror::Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error(transparent)]
    RepStab(#[from] RepStabError),
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AnalyzeOptions {
    /// Highest character-polynomial degree to try; default `2 * max(delta, 0)`.
    pub max_degree: Option<u32>,
    /// Fit window; default: the stable window of the dimension sequence.
    pub window: Option<(u32, u32)>,
}

pub struct AnalysisReport {
    pub degrees: DegreeReport,
    pub characters: Vec<ClassFunction>,
    pub multiplicities: MultiplicityTable,
    pub onset: u32,
    pub onset_flag: Flag,
    pub max_degree_used: u32,
    pub fit: Option<CharFit>,
    pub fit_error: Option<String>,
    pub inner_products: Option<InnerProducts>,
}

/// Runs the full diagnostic battery on a validated module.
pub fn analyze_module(
    module: &FiModule,
    opts: AnalyzeOptions,
) -> Result<AnalysisReport, AnalyzeError> {
    let degrees = module.observed_degrees()?;
    let characters: Vec<ClassFunction> = (0..=module.max_level())
        .map(|n| module.character(n))
        .collect();
    let multiplicities = decompose(&characters)?;
    let (onset, onset_flag) = stabilization_onset(&multiplicities);
    let max_degree = opts
        .max_degree
        .unwrap_or_else(|| 2 * u32::try_from(degrees.delta.max(0)).unwrap());
    let window = opts.window.unwrap_or(degrees.window);
    let (fit, fit_error) = match fit_character_polynomial(&characters, max_degree, window) {
        Ok(fit) => (Some(fit), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let inner_products = match &fit {
        Some(f) => Some(stable_inner_product(&characters, &f.poly)?),
        None => None,
    };
    Ok(AnalysisReport {
        degrees,
        characters,
        multiplicities,
        onset,
        onset_flag,
        max_degree_used: max_degree,
        fit,
        fit_error,
        inner_products,
    })
}

impl AnalysisReport {
    pub fn to_json(&self) -> J {
        let d = &self.degrees;
        let degrees = J::Obj(vec![
            ("t0".into(), J::Int(d.t0)),
            ("t0Flag".into(), J::Str(d.t0_flag.to_string())),
            ("t1".into(), J::Int(d.t1)),
            ("t1Flag".into(), J::Str(d.t1_flag.to_string())),
            ("delta".into(), J::Int(d.delta)),
            ("deltaFlag".into(), J::Str(d.delta_flag.to_string())),
            ("hmax".into(), J::Int(d.hmax)),
            ("hmaxFlag".into(), J::Str(d.hmax_flag.to_string())),
            (
                "window".into(),
                J::Arr(vec![J::Int(d.window.0 as i64), J::Int(d.window.1 as i64)]),
            ),
        ]);
        let multiplicities = J::Obj(
            self.multiplicities
                .levels()
                .iter()
                .enumerate()
                .map(|(n, tails)| {
                    (
                        n.to_string(),
                        J::Obj(
                            tails
                                .iter()
                                .map(|(tail, m)| (tail.to_string(), J::Int(*m as i64)))
                                .collect(),
                        ),
                    )
                })
                .collect(),
        );
        let fit = match &self.fit {
            None => J::Null,
            Some(f) => J::Obj(vec![
                (
                    "monomials".into(),
                    J::Arr(
                        f.poly
                            .coeffs()
                            .iter()
                            .map(|(m, c)| {
                                J::Obj(vec![
                                    (
                                        "m".into(),
                                        J::Obj(
                                            m.exponents()
                                                .iter()
                                                .map(|(&l, &e)| (l.to_string(), J::Int(e as i64)))
                                                .collect(),
                                        ),
                                    ),
                                    ("coeff".into(), J::Str(render(c))),
                                ])
                            })
                            .collect(),
                    ),
                ),
                ("rendered".into(), J::Str(f.poly.to_string())),
                ("degree".into(), J::Int(f.degree)),
                ("unique".into(), J::Bool(f.unique)),
                ("maxVariable".into(), J::Int(f.max_variable as i64)),
                (
                    "window".into(),
                    J::Arr(vec![J::Int(f.window.0 as i64), J::Int(f.window.1 as i64)]),
                ),
                ("residualsZero".into(), J::Bool(f.residuals_zero)),
            ]),
        };
        let inner = match &self.inner_products {
            None => J::Null,
            Some(ip) => J::Obj(vec![
                (
                    "values".into(),
                    J::Obj(
                        ip.values
                            .iter()
                            .map(|(n, v)| (n.to_string(), J::Str(render(v))))
                            .collect(),
                    ),
                ),
                ("onset".into(), J::Int(ip.onset as i64)),
                ("onsetFlag".into(), J::Str(ip.flag.to_string())),
            ]),
        };
        let mut fields = vec![
            (
                "maxLevel".into(),
                J::Int(self.degrees.dims.len() as i64 - 1),
            ),
            (
                "dims".into(),
                J::Arr(d.dims.iter().map(|&x| J::Int(x as i64)).collect()),
            ),
            (
                "fiHomology0Dims".into(),
                J::Arr(d.h0_dims.iter().map(|&x| J::Int(x as i64)).collect()),
            ),
            ("degrees".into(), degrees),
            ("multiplicities".into(), multiplicities),
            ("stabilizationOnset".into(), J::Int(self.onset as i64)),
            (
                "stabilizationFlag".into(),
                J::Str(self.onset_flag.to_string()),
            ),
            ("fitMaxDegree".into(), J::Int(self.max_degree_used as i64)),
            ("characterPolynomial".into(), fit),
        ];
        if let Some(err) = &self.fit_error {
            fields.push(("fitError".into(), J::Str(err.clone())));
        }
        fields.push(("innerProducts".into(), inner));
        J::Obj(fields)
    }

    pub fn render_json(&self) -> String {
        self.to_json().render_pretty()
    }

    pub fn render_text(&self) -> String {
        let d = &self.degrees;
        let mut out = String::new();
        let dims: Vec<String> = d.dims.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("dimensions        : [{}]\n", dims.join(", ")));
        let h0: Vec<String> = d.h0_dims.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("FI-homology_0 dims: [{}]\n", h0.join(", ")));
        out.push_str(&format!(
            "generation degree : t0 = {}  [{}]\n",
            d.t0, d.t0_flag
        ));
        out.push_str(&format!(
            "relation degree   : t1 = {}  [{}]\n",
            d.t1, d.t1_flag
        ));
        out.push_str(&format!(
            "stable degree     : delta = {}  [{}]\n",
            d.delta, d.delta_flag
        ));
        out.push_str(&format!(
            "local degree      : hmax = {}  [{}]\n",
            d.hmax, d.hmax_flag
        ));
        out.push_str(&format!(
            "polynomial window : levels {}..={}\n",
            d.window.0, d.window.1
        ));
        out.push_str("multiplicities (padded shapes):\n");
        for (n, tails) in self.multiplicities.levels().iter().enumerate() {
            let entries: Vec<String> = tails.iter().map(|(t, m)| format!("{t}: {m}")).collect();
            out.push_str(&format!("  n = {n}: {{{}}}\n", entries.join(", ")));
        }
        out.push_str(&format!(
            "stabilization onset: {}  [{}]\n",
            self.onset, self.onset_flag
        ));
        match &self.fit {
            Some(f) => {
                out.push_str(&format!(
                    "character polynomial (window {}..={}, degree {}, unique: {}): {}\n",
                    f.window.0, f.window.1, f.degree, f.unique, f.poly
                ));
            }
            None => {
                out.push_str(&format!(
                    "character polynomial: none ({})\n",
                    self.fit_error.as_deref().unwrap_or("no fit")
                ));
            }
        }
        if let Some(ip) = &self.inner_products {
            let vals: Vec<String> = ip
                .values
                .iter()
                .map(|(n, v)| format!("{n}: {}", crate::rational::pretty(v)))
                .collect();
            out.push_str(&format!(
                "inner products <chi_n, Q>: {{{}}}\n",
                vals.join(", ")
            ));
            out.push_str(&format!(
                "inner-product onset: {}  [{}]\n",
                ip.onset, ip.flag
            ));
        }
        out
    }
}

/// JSON report for a preset bound derivation.
pub fn bounds_report_json(r: &BoundsReport) -> J {
    let mut fields = vec![
        ("preset".into(), J::Str(r.preset.name().into())),
        ("k".into(), J::Int(r.k)),
        ("lambda".into(), J::Int(r.lambda)),
        ("delta".into(), J::Str(r.delta_expr.render("k"))),
        ("hmax".into(), J::Str(r.hmax_expr.render("k"))),
        ("t0".into(), J::Str(r.t0_expr.render("k"))),
        ("t1".into(), J::Str(r.t1_expr.render("k"))),
        ("stableRange".into(), J::Str(r.stable_expr.render("k"))),
        (
            "values".into(),
            J::Obj(vec![
                ("delta".into(), J::Int(r.delta)),
                ("hmax".into(), J::Int(r.hmax)),
                ("t0".into(), J::Int(r.t0)),
                ("t1".into(), J::Int(r.t1)),
                ("stableRange".into(), J::Int(r.stable_n)),
            ]),
        ),
    ];
    if let Some(six_k) = &r.rational_stable_range {
        fields.push(("rationalStableRange".into(), J::Str(six_k.render("k"))));
        fields.push((
            "rationalStableRangeValue".into(),
            J::Int(six_k.eval_i64(r.k)),
        ));
    }
    fields.push((
        "trace".into(),
        J::Arr(
            r.trace
                .iter()
                .map(|s| {
                    J::Obj(vec![
                        ("rule".into(), J::Str(s.rule.clone())),
                        ("detail".into(), J::Str(s.detail.clone())),
                    ])
                })
                .collect(),
        ),
    ));
    J::Obj(fields)
}

pub fn bounds_report_text(r: &BoundsReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "preset {} at k = {}, lambda = {}\n",
        r.preset.name(),
        r.k,
        r.lambda
    ));
    out.push_str(&format!(
        "  delta        <= {:<4} [{}]\n",
        r.delta,
        r.delta_expr.render("k")
    ));
    out.push_str(&format!(
        "  hmax         <= {:<4} [{}]\n",
        r.hmax,
        r.hmax_expr.render("k")
    ));
    out.push_str(&format!(
        "  t0           <= {:<4} [{}]\n",
        r.t0,
        r.t0_expr.render("k")
    ));
    out.push_str(&format!(
        "  t1           <= {:<4} [{}]\n",
        r.t1,
        r.t1_expr.render("k")
    ));
    out.push_str(&format!(
        "  stable range n >= {:<4} [{}]\n",
        r.stable_n,
        r.stable_expr.render("k")
    ));
    if let Some(six_k) = &r.rational_stable_range {
        out.push_str(&format!(
            "  rational stable range n >= {} [{}]\n",
            six_k.eval_i64(r.k),
            six_k.render("k")
        ));
    }
    out.push_str("derivation:\n");
    for (i, step) in r.trace.iter().enumerate() {
        out.push_str(&format!("  {}. {}: {}\n", i + 1, step.rule, step.detail));
    }
    out
}

pub struct ConfigReport {
    pub dim: u32,
    pub orientable: bool,
    pub q: i64,
    pub bounds: ConfigBounds,
}

pub fn config_report(dim: u32, orientable: bool, q: i64) -> Result<ConfigReport, RuleError> {
    let bounds = config_space_rule(dim, orientable)?;
    Ok(ConfigReport {
        dim,
        orientable,
        q,
        bounds,
    })
}

impl ConfigReport {
    pub fn to_json(&self) -> J {
        let b = &self.bounds;
        J::Obj(vec![
            ("preset".into(), J::Str("config".into())),
            ("dim".into(), J::Int(self.dim as i64)),
            ("orientable".into(), J::Int(i64::from(self.orientable))),
            ("q".into(), J::Int(self.q)),
            ("delta".into(), J::Str(b.profile.delta.render("q"))),
            ("hmax".into(), J::Str(b.profile.hmax.render("q"))),
            ("t0".into(), J::Str(b.t0.render("q"))),
            ("t1".into(), J::Str(b.t1.render("q"))),
            (
                "values".into(),
                J::Obj(vec![
                    ("delta".into(), J::Int(b.profile.delta.eval_i64(self.q))),
                    ("hmax".into(), J::Int(b.profile.hmax.eval_i64(self.q))),
                    ("t0".into(), J::Int(b.t0.eval_i64(self.q))),
                    ("t1".into(), J::Int(b.t1.eval_i64(self.q))),
                ]),
            ),
        ])
    }

    pub fn render_json(&self) -> String {
        self.to_json().render_pretty()
    }

    pub fn render_text(&self) -> String {
        let b = &self.bounds;
        let mut out = String::new();
        out.push_str(&format!(
            "configuration spaces of a {}-manifold ({}), q = {}\n",
            self.dim,
            if self.orientable {
                "orientable"
            } else {
                "non-orientable"
            },
            self.q
        ));
        out.push_str(&format!(
            "  delta <= {:<4} [{}]\n",
            b.profile.delta.eval_i64(self.q),
            b.profile.delta.render("q")
        ));
        out.push_str(&format!(
            "  hmax  <= {:<4} [{}]\n",
            b.profile.hmax.eval_i64(self.q),
            b.profile.hmax.render("q")
        ));
        out.push_str(&format!(
            "  t0    <= {:<4} [{}]\n",
            b.t0.eval_i64(self.q),
            b.t0.render("q")
        ));
        out.push_str(&format!(
            "  t1    <= {:<4} [{}]\n",
            b.t1.eval_i64(self.q),
            b.t1.render("q")
        ));
        out
    }
}
