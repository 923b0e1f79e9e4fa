//! The degree calculus: propagation rules for (stable degree, local degree)
//! pairs and the preset derivation pipelines.
//!
//! A [`DegreeProfile`] carries symbolic upper bounds for the stable degree
//! `delta` and the local degree `hmax` of an FI-module, as functions of a
//! grading index. The rules compose profiles through coefficient systems,
//! kernels/cokernels, filtrations and first-quadrant spectral sequences, and
//! convert the results into generation/presentation degrees and
//! representation-stable ranges.

use crate::bexpr::BoundExpr;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub delta: BoundExpr,
    pub hmax: BoundExpr,
}

impl DegreeProfile {
    pub fn new(delta: BoundExpr, hmax: BoundExpr) -> Self {
        DegreeProfile { delta, hmax }
    }

    pub fn constants(delta: i64, hmax: i64) -> Self {
        DegreeProfile {
            delta: BoundExpr::constant(delta),
            hmax: BoundExpr::constant(hmax),
        }
    }

    pub fn eval(&self, k: i64) -> (i64, i64) {
        (self.delta.eval_i64(k), self.hmax.eval_i64(k))
    }
}

/// Bounds for cohomology with coefficients in a module with profile
/// `(D, eta)`: the stable degree is unchanged and the local degree grows to
/// `max(2D - 2, eta)`.
pub fn coefficients_rule(profile: &DegreeProfile) -> DegreeProfile {
    let two_d_minus_2 = profile.delta.value_scale(2).add_const(-2);
    DegreeProfile {
        delta: profile.delta.clone(),
        hmax: two_d_minus_2.max_with(&profile.hmax),
    }
}

/// Bounds for the kernel and cokernel of a map `V -> W`.
pub fn kernel_cokernel_rule(
    v: &DegreeProfile,
    w: &DegreeProfile,
) -> (DegreeProfile, DegreeProfile) {
    let h = v
        .delta
        .value_scale(2)
        .add_const(-2)
        .max_with(&v.hmax)
        .max_with(&w.hmax);
    let kernel = DegreeProfile {
        delta: v.delta.clone(),
        hmax: h.clone(),
    };
    let cokernel = DegreeProfile {
        delta: w.delta.clone(),
        hmax: h,
    };
    (kernel, cokernel)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RuleError {
    #[error("filtration rule needs a nonempty list of profiles")]
    EmptyFiltration,
    #[error("configuration-space rule needs dimension >= 2, got {0}")]
    DimensionTooSmall(u32),
}

/// Bounds for a module with a finite filtration with the given graded
/// pieces: `delta` is the max of the pieces' and `hmax` is bounded by it.
pub fn filtration_rule(pieces: &[DegreeProfile]) -> Result<DegreeProfile, RuleError> {
    let mut iter = pieces.iter();
    let first = iter.next().ok_or(RuleError::EmptyFiltration)?;
    let mut out = first.clone();
    for p in iter {
        out.delta = out.delta.max_with(&p.delta);
        out.hmax = out.hmax.max_with(&p.hmax);
    }
    Ok(out)
}

/// Input to the spectral-sequence rule: at page `d`, `cap_delta` bounds
/// `D_l = max over p+q=l of delta(E_d^{p,q})` and `cap_hmax` bounds
/// `eta_l`, both as functions of the total degree `l`.
#[derive(Clone, Debug)]
pub struct SpectralInput {
    pub page: i64,
    pub cap_delta: BoundExpr,
    pub cap_hmax: BoundExpr,
}

impl SpectralInput {
    pub fn new(page: i64, cap_delta: BoundExpr, cap_hmax: BoundExpr) -> Self {
        assert!(page >= 2, "spectral pages start at 2");
        SpectralInput {
            page,
            cap_delta,
            cap_hmax,
        }
    }
}

fn prefix_max(f: &BoundExpr, upper: i64) -> Option<i64> {
    if upper < 0 {
        return None;
    }
    if f.is_nondecreasing() {
        return f.eval(upper);
    }
    (0..=upper).filter_map(|l| f.eval(l)).max()
}

/// Exact numeric evaluation of the spectral-sequence rule at total degree
/// `k`: `delta(M^k) <= D_k` and
/// `hmax(M^k) <= max(max_{l<=k+s-d} eta_l, max_{l<=2k-d+1} (2 D_l - 2))`
/// with `s = max(k+2, d)`. Empty ranges contribute nothing.
pub fn spectral_rule_at(input: &SpectralInput, k: i64) -> (i64, i64) {
    assert!(k >= 0);
    let d = input.page;
    let delta = input.cap_delta.eval_i64(k);
    let s = (k + 2).max(d);
    let eta_part = prefix_max(&input.cap_hmax, k + s - d);
    let dd = input.cap_delta.value_scale(2).add_const(-2);
    let dd_part = prefix_max(&dd, 2 * k - d + 1);
    let hmax = match (eta_part, dd_part) {
        (Some(a), Some(b)) => a.max(b),
        (a, b) => a.or(b).expect("local-degree maximum over an empty range"),
    };
    (delta, hmax)
}

/// Symbolic form of the spectral rule. Requires nondecreasing inputs; the
/// result treats the `2D - 2` range as nonempty for every `k`, so callers
/// must cross-check against [`spectral_rule_at`] (the presets do, on
/// `k = 0..=50`).
pub fn spectral_rule_symbolic(input: &SpectralInput) -> Option<DegreeProfile> {
    let d = input.page;
    // k + s - d with s = max(k+2, d): the pointwise max of 2k+2-d and k
    let eta_args = [(2i64, 2 - d), (1, 0)];
    let eta_part = input.cap_hmax.sup_over_prefix(&eta_args)?;
    let dd = input.cap_delta.value_scale(2).add_const(-2);
    let dd_part = dd.sup_over_prefix(&[(2, 1 - d)])?;
    if !input.cap_delta.is_nondecreasing() {
        return None;
    }
    Some(DegreeProfile {
        delta: input.cap_delta.clone(),
        hmax: eta_part.max_with(&dd_part),
    })
}

/// Generation and relation degree from a (stable, local) profile:
/// `t0 <= delta + hmax + 1`, `t1 <= delta + 2*hmax + 2`.
pub fn presentation_rule(profile: &DegreeProfile) -> (BoundExpr, BoundExpr) {
    let t0 = profile.delta.add(&profile.hmax).add_const(1);
    let t1 = profile.delta.add(&profile.hmax.value_scale(2)).add_const(2);
    (t0, t1)
}

/// The four configuration-space bounds for a connected `d`-manifold, as
/// functions of the cohomological degree `q`, with `mu = 2` iff `d = 2` and
/// `lambda = 1` iff orientable:
/// `delta <= mu q`, `hmax <= max(-1, 4 mu q - 2 mu lambda - 2)`,
/// `t0 <= max(mu q, 5 mu q - 2 mu lambda - 1)`,
/// `t1 <= max(mu q, 9 mu q - 4 mu lambda - 2)`.
#[derive(Debug)]
pub struct ConfigBounds {
    pub mu: i64,
    pub lambda: i64,
    pub profile: DegreeProfile,
    pub t0: BoundExpr,
    pub t1: BoundExpr,
}

pub fn config_space_rule(dim: u32, orientable: bool) -> Result<ConfigBounds, RuleError> {
    if dim < 2 {
        return Err(RuleError::DimensionTooSmall(dim));
    }
    let mu: i64 = if dim == 2 { 2 } else { 1 };
    let lambda: i64 = if orientable { 1 } else { 0 };
    let delta = BoundExpr::affine(mu, 0);
    let hmax = BoundExpr::constant(-1).max_with(&BoundExpr::affine(4 * mu, -2 * mu * lambda - 2));
    let t0 = BoundExpr::affine(mu, 0).max_with(&BoundExpr::affine(5 * mu, -2 * mu * lambda - 1));
    let t1 = BoundExpr::affine(mu, 0).max_with(&BoundExpr::affine(9 * mu, -4 * mu * lambda - 2));
    Ok(ConfigBounds {
        mu,
        lambda,
        profile: DegreeProfile { delta, hmax },
        t0,
        t1,
    })
}

/// Representation-stable range: `n >= 2*delta + hmax + 1` in general,
/// `n >= 2*delta` for modules restricted from based injections.
pub fn stable_range_rule(profile: &DegreeProfile, fi_sharp: bool) -> BoundExpr {
    if fi_sharp {
        profile.delta.value_scale(2)
    } else {
        profile.delta.value_scale(2).add(&profile.hmax).add_const(1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// Pure mapping class groups of surfaces (closed or low-genus cases).
    Mcg,
    /// Pure mapping class groups of surfaces with nonempty boundary.
    McgBoundary,
    /// Classifying spaces of pure diffeomorphism groups, dimension >= 3.
    Diffeo,
    /// Hyperelliptic mapping class groups with marked points.
    Hyperelliptic,
}

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Preset::Mcg => "mcg",
            Preset::McgBoundary => "mcg-boundary",
            Preset::Diffeo => "diffeo",
            Preset::Hyperelliptic => "hyperelliptic",
        }
    }
}

impl FromStr for Preset {
    type Err = UnknownPreset;

    fn from_str(s: &str) -> Result<Self, UnknownPreset> {
        match s {
            "mcg" => Ok(Preset::Mcg),
            "mcg-boundary" => Ok(Preset::McgBoundary),
            "diffeo" => Ok(Preset::Diffeo),
            "hyperelliptic" => Ok(Preset::Hyperelliptic),
            other => Err(UnknownPreset(other.to_owned())),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("unknown preset `{0}` (expected mcg, mcg-boundary, diffeo or hyperelliptic)")]
pub struct UnknownPreset(pub String);

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PresetError {
    #[error(transparent)]
    UnknownPreset(#[from] UnknownPreset),
    #[error("k must be nonnegative, got {0}")]
    NegativeK(i64),
    #[error("lambda must be 0 or 1, got {0}")]
    BadLambda(i64),
    #[error("preset {preset}: derived {what} disagrees with the closed form at k = {k}: {derived} vs {expected}")]
    DerivationMismatch {
        preset: &'static str,
        what: &'static str,
        k: i64,
        derived: i64,
        expected: i64,
    },
}

#[derive(Clone, Debug)]
pub struct TraceStep {
    pub rule: String,
    pub detail: String,
}

/// Full output of a preset derivation at a given `k`.
#[derive(Debug)]
pub struct BoundsReport {
    pub preset: Preset,
    pub k: i64,
    pub lambda: i64,
    /// Closed forms in `k` (lambda already substituted).
    pub delta_expr: BoundExpr,
    pub hmax_expr: BoundExpr,
    pub t0_expr: BoundExpr,
    pub t1_expr: BoundExpr,
    pub stable_expr: BoundExpr,
    /// Values at `k`.
    pub delta: i64,
    pub hmax: i64,
    pub t0: i64,
    pub t1: i64,
    pub stable_n: i64,
    /// Improved rational stable range, hyperelliptic preset only.
    pub rational_stable_range: Option<BoundExpr>,
    pub trace: Vec<TraceStep>,
}

struct ClosedForms {
    delta: BoundExpr,
    hmax: BoundExpr,
    t0: BoundExpr,
    t1: BoundExpr,
    stable: BoundExpr,
}

fn mcg_closed_forms(lambda: i64) -> ClosedForms {
    ClosedForms {
        delta: BoundExpr::affine(2, 0),
        hmax: BoundExpr::constant(-1).max_with(&BoundExpr::affine(16, -4 * lambda - 2)),
        t0: BoundExpr::constant(0).max_with(&BoundExpr::affine(18, -4 * lambda - 1)),
        t1: BoundExpr::constant(0).max_with(&BoundExpr::affine(34, -8 * lambda - 2)),
        stable: BoundExpr::constant(0).max_with(&BoundExpr::affine(20, -4 * lambda - 1)),
    }
}

fn diffeo_closed_forms(lambda: i64) -> ClosedForms {
    ClosedForms {
        delta: BoundExpr::affine(1, 0),
        hmax: BoundExpr::constant(-1).max_with(&BoundExpr::affine(8, -2 * lambda - 2)),
        t0: BoundExpr::constant(0).max_with(&BoundExpr::affine(9, -2 * lambda - 1)),
        t1: BoundExpr::constant(0).max_with(&BoundExpr::affine(17, -4 * lambda - 2)),
        // no simpler closed form for this one: 2*delta + hmax + 1
        stable: BoundExpr::affine(2, 0).max_with(&BoundExpr::affine(10, -2 * lambda - 1)),
    }
}

fn boundary_closed_forms() -> ClosedForms {
    ClosedForms {
        delta: BoundExpr::affine(2, 0),
        hmax: BoundExpr::constant(-1),
        t0: BoundExpr::affine(2, 0),
        t1: BoundExpr::affine(2, 0),
        stable: BoundExpr::affine(4, 0),
    }
}

/// Runs a preset derivation: configuration-space bounds, coefficient
/// systems, the page-2 spectral sequence, presentation degrees and the
/// stable range, verified against the closed forms on `k = 0..=50`.
pub fn preset_pipeline(preset: Preset, k: i64, lambda: i64) -> Result<BoundsReport, PresetError> {
    if k < 0 {
        return Err(PresetError::NegativeK(k));
    }
    if !(0..=1).contains(&lambda) {
        return Err(PresetError::BadLambda(lambda));
    }
    match preset {
        Preset::McgBoundary => boundary_report(k, lambda),
        Preset::Mcg => spectral_report(Preset::Mcg, 2, k, lambda, mcg_closed_forms(lambda)),
        Preset::Hyperelliptic => {
            // always the orientable case
            let mut report = spectral_report(Preset::Hyperelliptic, 2, k, 1, mcg_closed_forms(1))?;
            let six_k = BoundExpr::affine(6, 0);
            report.trace.push(TraceStep {
                rule: "weight-stability refinement".into(),
                detail: format!(
                    "over Q the rational stable range improves to 6k = {}",
                    six_k.eval_i64(k)
                ),
            });
            report.rational_stable_range = Some(six_k);
            Ok(report)
        }
        Preset::Diffeo => {
            spectral_report(Preset::Diffeo, 3, k, lambda, diffeo_closed_forms(lambda))
        }
    }
}

fn boundary_report(k: i64, lambda: i64) -> Result<BoundsReport, PresetError> {
    let forms = boundary_closed_forms();
    let trace = vec![
        TraceStep {
            rule: "based-injection structure".into(),
            detail: "nonempty boundary: the cohomology extends over based injections, so the \
                     module is induced and its local degree is -1"
                .into(),
        },
        TraceStep {
            rule: "stable degree".into(),
            detail: format!("delta <= 2k = {}", 2 * k),
        },
        TraceStep {
            rule: "induced presentation".into(),
            detail: "for an induced module t0 = delta and t1 <= delta".into(),
        },
        TraceStep {
            rule: "stable_range_rule".into(),
            detail: format!("representation stable for n >= 2*delta = 4k = {}", 4 * k),
        },
        TraceStep {
            rule: "evaluate".into(),
            detail: format!(
                "k={k}: delta={}, hmax={}, t0={}, t1={}, N={}",
                2 * k,
                -1,
                2 * k,
                2 * k,
                4 * k
            ),
        },
    ];
    Ok(BoundsReport {
        preset: Preset::McgBoundary,
        k,
        lambda,
        delta: forms.delta.eval_i64(k),
        hmax: forms.hmax.eval_i64(k),
        t0: forms.t0.eval_i64(k),
        t1: forms.t1.eval_i64(k),
        stable_n: forms.stable.eval_i64(k),
        delta_expr: forms.delta,
        hmax_expr: forms.hmax,
        t0_expr: forms.t0,
        t1_expr: forms.t1,
        stable_expr: forms.stable,
        rational_stable_range: None,
        trace,
    })
}

fn spectral_report(
    preset: Preset,
    dim: u32,
    k: i64,
    lambda: i64,
    forms: ClosedForms,
) -> Result<BoundsReport, PresetError> {
    let orientable = lambda == 1;
    let mut trace = Vec::new();

    let conf = config_space_rule(dim, orientable).expect("dim >= 2 by construction");
    trace.push(TraceStep {
        rule: "config_space_rule".into(),
        detail: format!(
            "fiber bounds in q (mu={}, lambda={}): delta <= {}, hmax <= {}",
            conf.mu,
            conf.lambda,
            conf.profile.delta.render("q"),
            conf.profile.hmax.render("q"),
        ),
    });

    let page = coefficients_rule(&conf.profile);
    trace.push(TraceStep {
        rule: "coefficients_rule".into(),
        detail: format!(
            "E_2 entries: delta <= {}, hmax <= max(2D-2, eta) = {}",
            page.delta.render("q"),
            page.hmax.render("q"),
        ),
    });

    // E_2^{p,q} depends only on q and the bounds are nondecreasing, so the
    // maxima over p+q=l are the same expressions read as functions of l.
    debug_assert!(page.delta.is_nondecreasing() && page.hmax.is_nondecreasing());
    let input = SpectralInput::new(2, page.delta.clone(), page.hmax.clone());
    let (delta_num, hmax_num) = spectral_rule_at(&input, k);
    let symbolic =
        spectral_rule_symbolic(&input).expect("preset spectral inputs are nondecreasing");
    trace.push(TraceStep {
        rule: "spectral_rule".into(),
        detail: format!(
            "page 2 collapse: delta <= {}, hmax <= {}",
            symbolic.delta.render("k"),
            symbolic.hmax.render("k"),
        ),
    });

    let (t0_sym, t1_sym) = presentation_rule(&symbolic);
    trace.push(TraceStep {
        rule: "presentation_rule".into(),
        detail: format!(
            "t0 <= delta + hmax + 1 = {}, t1 <= delta + 2 hmax + 2 = {}",
            t0_sym.render("k"),
            t1_sym.render("k"),
        ),
    });

    let stable_sym = stable_range_rule(&symbolic, false);
    trace.push(TraceStep {
        rule: "stable_range_rule".into(),
        detail: format!(
            "representation stable for n >= 2 delta + hmax + 1 = {}",
            stable_sym.render("k"),
        ),
    });

    // The derivation must agree with the closed forms everywhere we can
    // check; a discrepancy is reported, never patched.
    let checks: [(&'static str, &BoundExpr, &BoundExpr); 5] = [
        ("delta", &symbolic.delta, &forms.delta),
        ("hmax", &symbolic.hmax, &forms.hmax),
        ("t0", &t0_sym, &forms.t0),
        ("t1", &t1_sym, &forms.t1),
        ("stable range", &stable_sym, &forms.stable),
    ];
    for (what, derived, expected) in checks {
        for kk in 0..=50 {
            let d = derived.eval_i64(kk);
            let p = expected.eval_i64(kk);
            if d != p {
                return Err(PresetError::DerivationMismatch {
                    preset: preset.name(),
                    what,
                    k: kk,
                    derived: d,
                    expected: p,
                });
            }
        }
    }
    // numeric path agrees with the symbolic one at the requested k
    for (what, derived, num) in [
        ("delta", &symbolic.delta, delta_num),
        ("hmax", &symbolic.hmax, hmax_num),
    ] {
        if derived.eval_i64(k) != num {
            return Err(PresetError::DerivationMismatch {
                preset: preset.name(),
                what,
                k,
                derived: derived.eval_i64(k),
                expected: num,
            });
        }
    }

    let t0 = t0_sym.eval_i64(k);
    let t1 = t1_sym.eval_i64(k);
    let stable_n = stable_sym.eval_i64(k);
    trace.push(TraceStep {
        rule: "evaluate".into(),
        detail: format!(
            "k={k}: delta={delta_num}, hmax={hmax_num}, t0={t0}, t1={t1}, N={stable_n}"
        ),
    });

    Ok(BoundsReport {
        preset,
        k,
        lambda,
        delta: delta_num,
        hmax: hmax_num,
        t0,
        t1,
        stable_n,
        delta_expr: forms.delta,
        hmax_expr: forms.hmax,
        t0_expr: forms.t0,
        t1_expr: forms.t1,
        stable_expr: forms.stable,
        rational_stable_range: None,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(delta: &BoundExpr, hmax: &BoundExpr) -> DegreeProfile {
        DegreeProfile::new(delta.clone(), hmax.clone())
    }

    #[test]
    fn coefficients_rule_examples() {
        // (2q, max(-1, 8q-6)) -> (2q, max(4q-2, 8q-6))
        let p = profile(
            &BoundExpr::affine(2, 0),
            &BoundExpr::constant(-1).max_with(&BoundExpr::affine(8, -6)),
        );
        let out = coefficients_rule(&p);
        assert_eq!(out.delta, BoundExpr::affine(2, 0));
        for q in 0..=20 {
            let expected = (-1i64).max(4 * q - 2).max(8 * q - 6);
            assert_eq!(out.hmax.eval_i64(q), expected, "q = {q}");
        }
        // constant module stays put
        let c = DegreeProfile::constants(0, -1);
        let out = coefficients_rule(&c);
        assert_eq!(out.eval(0), (0, -1));
        // (q, max(-1, 4q-4)) -> (q, max(2q-2, 4q-4))
        let p = profile(
            &BoundExpr::affine(1, 0),
            &BoundExpr::constant(-1).max_with(&BoundExpr::affine(4, -4)),
        );
        let out = coefficients_rule(&p);
        for q in 0..=20 {
            let expected = (-1i64).max(2 * q - 2).max(4 * q - 4);
            assert_eq!(out.hmax.eval_i64(q), expected, "q = {q}");
        }
    }

    #[test]
    fn kernel_cokernel_examples() {
        let (ker, coker) = kernel_cokernel_rule(
            &DegreeProfile::constants(2, 2),
            &DegreeProfile::constants(3, 0),
        );
        assert_eq!(ker.eval(0), (2, 2));
        assert_eq!(coker.eval(0), (3, 2));

        let z = DegreeProfile::constants(0, -1);
        let (ker, coker) = kernel_cokernel_rule(&z, &z);
        assert_eq!(ker.eval(0), (0, -1));
        assert_eq!(coker.eval(0), (0, -1));

        let (_, coker) = kernel_cokernel_rule(
            &DegreeProfile::constants(1, 0),
            &DegreeProfile::constants(1, 4),
        );
        assert_eq!(coker.eval(0), (1, 4));
    }

    #[test]
    fn filtration_examples() {
        let out = filtration_rule(&[
            DegreeProfile::constants(1, 2),
            DegreeProfile::constants(3, 0),
        ])
        .unwrap();
        assert_eq!(out.eval(0), (3, 2));
        let single = DegreeProfile::constants(5, 7);
        assert_eq!(
            filtration_rule(std::slice::from_ref(&single))
                .unwrap()
                .eval(0),
            (5, 7)
        );
        let z = DegreeProfile::constants(0, -1);
        assert_eq!(
            filtration_rule(&[z.clone(), z.clone()]).unwrap().eval(0),
            (0, -1)
        );
        assert_eq!(filtration_rule(&[]), Err(RuleError::EmptyFiltration));
    }

    #[test]
    fn spectral_rule_surface_case_at_k1() {
        // D_l = 2l, eta_l = max(-1, 8l-6), page 2, k = 1:
        // delta <= 2, hmax <= max(eta_2, 2 D_1 - 2) = max(10, 2) = 10
        let input = SpectralInput::new(
            2,
            BoundExpr::affine(2, 0),
            BoundExpr::constant(-1).max_with(&BoundExpr::affine(8, -6)),
        );
        assert_eq!(spectral_rule_at(&input, 1), (2, 10));
        // delta <= D_0 at k = 0 for any page-2 input
        assert_eq!(spectral_rule_at(&input, 0).0, 0);
    }

    #[test]
    fn spectral_rule_empty_range_at_k0() {
        // D_l = l, eta_l = max(-1, 4l-4), page 2, k = 0: the 2D-2 range
        // l <= -1 is empty and the eta range stops at l = 0, so hmax <= -1.
        let input = SpectralInput::new(
            2,
            BoundExpr::affine(1, 0),
            BoundExpr::constant(-1).max_with(&BoundExpr::affine(4, -4)),
        );
        assert_eq!(spectral_rule_at(&input, 0), (0, -1));
    }

    #[test]
    fn symbolic_spectral_matches_numeric_for_monotone_inputs() {
        let inputs = [
            SpectralInput::new(
                2,
                BoundExpr::affine(2, 0),
                BoundExpr::constant(-1).max_with(&BoundExpr::affine(8, -6)),
            ),
            SpectralInput::new(
                2,
                BoundExpr::affine(1, 0),
                BoundExpr::constant(-1).max_with(&BoundExpr::affine(4, -2)),
            ),
            SpectralInput::new(
                3,
                BoundExpr::affine(1, 1),
                BoundExpr::constant(0).max_with(&BoundExpr::affine(2, -1)),
            ),
        ];
        for input in &inputs {
            let sym = spectral_rule_symbolic(input).unwrap();
            for k in 0..=50 {
                let (dn, hn) = spectral_rule_at(input, k);
                assert_eq!(sym.delta.eval_i64(k), dn, "delta at k = {k}");
                assert_eq!(sym.hmax.eval_i64(k), hn, "hmax at k = {k}");
            }
        }
    }

    #[test]
    fn presentation_rule_examples() {
        // (2k, max(-1, 16k-4l-2)) -> t0 = max(0, 18k-4l-1), t1 = max(0, 34k-8l-2)
        for lambda in [0i64, 1] {
            let p = profile(
                &BoundExpr::affine(2, 0),
                &BoundExpr::constant(-1).max_with(&BoundExpr::affine(16, -4 * lambda - 2)),
            );
            let (t0, t1) = presentation_rule(&p);
            for k in 0..=50 {
                assert_eq!(t0.eval_i64(k), 0.max(18 * k - 4 * lambda - 1));
                assert_eq!(t1.eval_i64(k), 0.max(34 * k - 8 * lambda - 2));
            }
            let p = profile(
                &BoundExpr::affine(1, 0),
                &BoundExpr::constant(-1).max_with(&BoundExpr::affine(8, -2 * lambda - 2)),
            );
            let (t0, t1) = presentation_rule(&p);
            for k in 0..=50 {
                assert_eq!(t0.eval_i64(k), 0.max(9 * k - 2 * lambda - 1));
                assert_eq!(t1.eval_i64(k), 0.max(17 * k - 4 * lambda - 2));
            }
        }
        let (t0, t1) = presentation_rule(&DegreeProfile::constants(0, -1));
        assert_eq!(t0.eval_i64(0), 0);
        assert_eq!(t1.eval_i64(0), 0);
    }

    #[test]
    fn config_space_rule_matches_formulas() {
        for dim in [2u32, 3, 4] {
            for orientable in [false, true] {
                let cb = config_space_rule(dim, orientable).unwrap();
                let mu = if dim == 2 { 2 } else { 1 };
                let lambda = i64::from(orientable);
                for q in 0..=10 {
                    assert_eq!(cb.profile.delta.eval_i64(q), mu * q);
                    assert_eq!(
                        cb.profile.hmax.eval_i64(q),
                        (-1i64).max(4 * mu * q - 2 * mu * lambda - 2)
                    );
                    assert_eq!(
                        cb.t0.eval_i64(q),
                        (mu * q).max(5 * mu * q - 2 * mu * lambda - 1)
                    );
                    assert_eq!(
                        cb.t1.eval_i64(q),
                        (mu * q).max(9 * mu * q - 4 * mu * lambda - 2)
                    );
                }
            }
        }
        // planar orientable at q = 1: (2, 2, 5, 8)
        let cb = config_space_rule(2, true).unwrap();
        assert_eq!(cb.profile.delta.eval_i64(1), 2);
        assert_eq!(cb.profile.hmax.eval_i64(1), 2);
        assert_eq!(cb.t0.eval_i64(1), 5);
        assert_eq!(cb.t1.eval_i64(1), 8);
        // d = 3 orientable at q = 2: (2, 4, 7, 12)
        let cb = config_space_rule(3, true).unwrap();
        assert_eq!(cb.profile.delta.eval_i64(2), 2);
        assert_eq!(cb.profile.hmax.eval_i64(2), 4);
        assert_eq!(cb.t0.eval_i64(2), 7);
        assert_eq!(cb.t1.eval_i64(2), 12);
        // q = 0 gives (0, -1, 0, 0) in every dimension
        for dim in [2u32, 3] {
            for orientable in [false, true] {
                let cb = config_space_rule(dim, orientable).unwrap();
                assert_eq!(cb.profile.delta.eval_i64(0), 0);
                assert_eq!(cb.profile.hmax.eval_i64(0), -1);
                assert_eq!(cb.t0.eval_i64(0), 0);
                assert_eq!(cb.t1.eval_i64(0), 0);
            }
        }
        assert_eq!(
            config_space_rule(1, true).unwrap_err(),
            RuleError::DimensionTooSmall(1)
        );
    }

    #[test]
    fn stable_range_examples() {
        for lambda in [0i64, 1] {
            let p = profile(
                &BoundExpr::affine(2, 0),
                &BoundExpr::constant(-1).max_with(&BoundExpr::affine(16, -4 * lambda - 2)),
            );
            let n = stable_range_rule(&p, false);
            for k in 0..=50 {
                assert_eq!(n.eval_i64(k), 0.max(20 * k - 4 * lambda - 1));
            }
        }
        let p = profile(&BoundExpr::affine(2, 0), &BoundExpr::constant(-1));
        let n = stable_range_rule(&p, true);
        for k in 0..=50 {
            assert_eq!(n.eval_i64(k), 4 * k);
        }
        assert_eq!(
            stable_range_rule(&DegreeProfile::constants(0, -1), false).eval_i64(0),
            0
        );
    }

    #[test]
    fn preset_values_at_small_k() {
        let r = preset_pipeline(Preset::Mcg, 1, 1).unwrap();
        assert_eq!(
            (r.delta, r.hmax, r.t0, r.t1, r.stable_n),
            (2, 10, 13, 24, 15)
        );
        let r = preset_pipeline(Preset::Mcg, 2, 0).unwrap();
        assert_eq!(
            (r.delta, r.hmax, r.t0, r.t1, r.stable_n),
            (4, 30, 35, 66, 39)
        );
        let r = preset_pipeline(Preset::Diffeo, 1, 1).unwrap();
        assert_eq!((r.delta, r.hmax, r.t0, r.t1), (1, 4, 6, 11));
        let r = preset_pipeline(Preset::Diffeo, 0, 0).unwrap();
        assert_eq!((r.delta, r.hmax, r.t0, r.t1), (0, -1, 0, 0));
        let r = preset_pipeline(Preset::McgBoundary, 3, 1).unwrap();
        assert_eq!((r.delta, r.hmax, r.t0, r.t1, r.stable_n), (6, -1, 6, 6, 12));
        let r = preset_pipeline(Preset::Hyperelliptic, 1, 1).unwrap();
        assert_eq!((r.delta, r.hmax, r.t0, r.t1), (2, 10, 13, 24));
        assert_eq!(r.rational_stable_range.as_ref().unwrap().eval_i64(1), 6);
    }

    #[test]
    fn presets_reproduce_closed_forms_for_all_small_k() {
        for lambda in [0i64, 1] {
            for k in 0..=10 {
                let r = preset_pipeline(Preset::Mcg, k, lambda).unwrap();
                assert_eq!(r.delta, 2 * k);
                assert_eq!(r.hmax, (-1).max(16 * k - 4 * lambda - 2));
                assert_eq!(r.t0, 0.max(18 * k - 4 * lambda - 1));
                assert_eq!(r.t1, 0.max(34 * k - 8 * lambda - 2));
                assert_eq!(r.stable_n, 0.max(20 * k - 4 * lambda - 1));

                let r = preset_pipeline(Preset::Diffeo, k, lambda).unwrap();
                assert_eq!(r.delta, k);
                assert_eq!(r.hmax, (-1).max(8 * k - 2 * lambda - 2));
                assert_eq!(r.t0, 0.max(9 * k - 2 * lambda - 1));
                assert_eq!(r.t1, 0.max(17 * k - 4 * lambda - 2));

                let r = preset_pipeline(Preset::McgBoundary, k, lambda).unwrap();
                assert_eq!(
                    (r.delta, r.hmax, r.t0, r.t1, r.stable_n),
                    (2 * k, -1, 2 * k, 2 * k, 4 * k)
                );

                let r = preset_pipeline(Preset::Hyperelliptic, k, lambda).unwrap();
                assert_eq!(r.hmax, (-1).max(16 * k - 6));
                assert_eq!(r.rational_stable_range.unwrap().eval_i64(k), 6 * k);
            }
        }
    }

    #[test]
    fn closed_form_simplifications_hold_pointwise() {
        // the raw presentation sum keeps a 2k term that the closed form
        // absorbs into the 0 floor; they agree pointwise on k >= 0
        let p = profile(
            &BoundExpr::affine(2, 0),
            &BoundExpr::constant(-1).max_with(&BoundExpr::affine(16, -6)),
        );
        let (t0, _) = presentation_rule(&p);
        let closed = BoundExpr::constant(0).max_with(&BoundExpr::affine(18, -5));
        assert!(t0.pointwise_eq(&closed, 50));
        assert_ne!(t0, closed);
    }

    #[test]
    fn presentation_rule_output_dominates() {
        // t1 >= t0 >= delta pointwise whenever hmax >= -1 and delta >= 0
        let deltas = [
            BoundExpr::constant(0),
            BoundExpr::affine(1, 0),
            BoundExpr::affine(2, 0),
            BoundExpr::constant(1).max_with(&BoundExpr::affine(3, -2)),
        ];
        let hmaxes = [
            BoundExpr::constant(-1),
            BoundExpr::constant(-1).max_with(&BoundExpr::affine(4, -3)),
            BoundExpr::affine(2, 0),
        ];
        for delta in &deltas {
            for hmax in &hmaxes {
                let p = profile(delta, hmax);
                let (t0, t1) = presentation_rule(&p);
                for k in 0..=50 {
                    let d = delta.eval_i64(k);
                    let t0v = t0.eval_i64(k);
                    let t1v = t1.eval_i64(k);
                    assert!(d >= 0 && hmax.eval_i64(k) >= -1, "inputs in range");
                    assert!(t0v >= d, "t0 >= delta at k = {k}");
                    assert!(t1v >= t0v, "t1 >= t0 at k = {k}");
                }
            }
        }
    }

    #[test]
    fn bad_arguments_are_rejected() {
        assert_eq!(
            preset_pipeline(Preset::Mcg, -1, 0).unwrap_err(),
            PresetError::NegativeK(-1)
        );
        assert_eq!(
            preset_pipeline(Preset::Mcg, 0, 2).unwrap_err(),
            PresetError::BadLambda(2)
        );
        assert!("mgc".parse::<Preset>().is_err());
        assert_eq!(
            "mcg-boundary".parse::<Preset>().unwrap(),
            Preset::McgBoundary
        );
    }
}
