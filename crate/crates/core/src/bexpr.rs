//! Piecewise-linear upper bounds: `k |-> max(c, a_1*k + b_1, a_2*k + b_2, ...)`.
//!
//! These are the symbolic values the degree calculus propagates. The algebra
//! is closed under pointwise max, addition, nonnegative integer scaling of
//! the value, and affine substitution of the variable. Simplification only
//! drops constituents that are dominated for every `k >= 0`, so evaluation
//! commutes with simplification.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoundExpr {
    /// Constant floor; `None` means the expression has no constant part.
    floor: Option<i64>,
    /// Affine terms `(a, b)` with `a != 0`, read as `a*k + b`.
    terms: BTreeSet<(i64, i64)>,
}

impl BoundExpr {
    /// The empty maximum (identity for `max`, absorbing for `+`).
    pub fn neg_inf() -> Self {
        BoundExpr {
            floor: None,
            terms: BTreeSet::new(),
        }
    }

    pub fn constant(c: i64) -> Self {
        BoundExpr {
            floor: Some(c),
            terms: BTreeSet::new(),
        }
    }

    pub fn affine(a: i64, b: i64) -> Self {
        if a == 0 {
            return Self::constant(b);
        }
        let mut terms = BTreeSet::new();
        terms.insert((a, b));
        BoundExpr { floor: None, terms }
    }

    pub fn is_empty(&self) -> bool {
        self.floor.is_none() && self.terms.is_empty()
    }

    pub fn eval(&self, k: i64) -> Option<i64> {
        let mut best = self.floor;
        for &(a, b) in &self.terms {
            let v = a * k + b;
            best = Some(best.map_or(v, |m| m.max(v)));
        }
        best
    }

    /// Evaluation that panics on the empty expression; for contexts where
    /// emptiness is impossible.
    pub fn eval_i64(&self, k: i64) -> i64 {
        self.eval(k).expect("empty bound expression")
    }

    pub fn max_with(&self, other: &BoundExpr) -> BoundExpr {
        let floor = match (self.floor, other.floor) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let terms = self.terms.union(&other.terms).copied().collect();
        BoundExpr { floor, terms }.simplified()
    }

    pub fn add(&self, other: &BoundExpr) -> BoundExpr {
        if self.is_empty() || other.is_empty() {
            return BoundExpr::neg_inf();
        }
        let mut out = BoundExpr::neg_inf();
        let mut push = |a: i64, b: i64| {
            if a == 0 {
                out.floor = Some(out.floor.map_or(b, |f| f.max(b)));
            } else {
                out.terms.insert((a, b));
            }
        };
        if let (Some(f), Some(g)) = (self.floor, other.floor) {
            push(0, f + g);
        }
        if let Some(f) = self.floor {
            for &(a, b) in &other.terms {
                push(a, b + f);
            }
        }
        if let Some(g) = other.floor {
            for &(a, b) in &self.terms {
                push(a, b + g);
            }
        }
        for &(a1, b1) in &self.terms {
            for &(a2, b2) in &other.terms {
                push(a1 + a2, b1 + b2);
            }
        }
        out.simplified()
    }

    pub fn add_const(&self, c: i64) -> BoundExpr {
        BoundExpr {
            floor: self.floor.map(|f| f + c),
            terms: self.terms.iter().map(|&(a, b)| (a, b + c)).collect(),
        }
    }

    /// Multiplies the *value* by `m >= 0` (`max` commutes with nonnegative
    /// scaling).
    pub fn value_scale(&self, m: i64) -> BoundExpr {
        assert!(m >= 0, "value_scale needs a nonnegative factor");
        if m == 0 {
            return if self.is_empty() {
                BoundExpr::neg_inf()
            } else {
                BoundExpr::constant(0)
            };
        }
        BoundExpr {
            floor: self.floor.map(|f| f * m),
            terms: self.terms.iter().map(|&(a, b)| (a * m, b * m)).collect(),
        }
        .simplified()
    }

    /// Substitutes the variable: `k |-> m*k + c` (exact for any integers).
    pub fn subst(&self, m: i64, c: i64) -> BoundExpr {
        let mut out = BoundExpr {
            floor: self.floor,
            terms: BTreeSet::new(),
        };
        for &(a, b) in &self.terms {
            let (na, nb) = (a * m, a * c + b);
            if na == 0 {
                out.floor = Some(out.floor.map_or(nb, |f| f.max(nb)));
            } else {
                out.terms.insert((na, nb));
            }
        }
        out.simplified()
    }

    /// All slopes nonnegative, hence nondecreasing on integers.
    pub fn is_nondecreasing(&self) -> bool {
        self.terms.iter().all(|&(a, _)| a >= 0)
    }

    /// Symbolic `max over 0 <= l <= U` of `self(l)`, where `U` ranges over
    /// the pointwise max of the given affine arguments. Only valid for
    /// nondecreasing expressions; the empty-prefix case (`U < 0`) is *not*
    /// represented, so callers must cross-check numerically where the bound
    /// argument can go negative.
    pub fn sup_over_prefix(&self, upper_args: &[(i64, i64)]) -> Option<BoundExpr> {
        if !self.is_nondecreasing() {
            return None;
        }
        let mut out = BoundExpr::neg_inf();
        for &(m, c) in upper_args {
            out = out.max_with(&self.subst(m, c));
        }
        Some(out)
    }

    /// Drops terms dominated for all `k >= 0`. Semantics-preserving only.
    fn simplified(&self) -> BoundExpr {
        let mut floor = self.floor;
        // fold non-positive-slope terms' best value (at k = 0) into domination
        let mut terms: Vec<(i64, i64)> = self.terms.iter().copied().collect();
        terms.retain(|&(a, b)| {
            // dominated by the floor for all k >= 0?
            if a <= 0 {
                if let Some(f) = floor {
                    if b <= f {
                        return false;
                    }
                }
            }
            true
        });
        // pairwise domination: (a,b) <= (a',b') pointwise when a <= a', b <= b'
        let mut kept: Vec<(i64, i64)> = Vec::new();
        for &(a, b) in &terms {
            if terms
                .iter()
                .any(|&(a2, b2)| (a2, b2) != (a, b) && a2 >= a && b2 >= b)
            {
                continue;
            }
            kept.push((a, b));
        }
        // floor dominated by a term with nonnegative slope and b >= floor
        if let Some(f) = floor {
            if kept.iter().any(|&(a, b)| a >= 0 && b >= f) {
                floor = None;
            }
        }
        BoundExpr {
            floor,
            terms: kept.into_iter().collect(),
        }
    }

    /// Pointwise equality on `0..=hi`.
    pub fn pointwise_eq(&self, other: &BoundExpr, hi: i64) -> bool {
        (0..=hi).all(|k| self.eval(k) == other.eval(k))
    }

    /// Renders with the given variable name, matching the usual closed-form
    /// style: `max(-1, 16k-6)`, `2k`, `0`.
    pub fn render(&self, var: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        if let Some(f) = self.floor {
            parts.push(f.to_string());
        }
        for &(a, b) in &self.terms {
            let coeff = match a {
                1 => var.to_string(),
                -1 => format!("-{var}"),
                a => format!("{a}{var}"),
            };
            let term = match b.cmp(&0) {
                std::cmp::Ordering::Equal => coeff,
                std::cmp::Ordering::Greater => format!("{coeff}+{b}"),
                std::cmp::Ordering::Less => format!("{coeff}{b}"),
            };
            parts.push(term);
        }
        match parts.len() {
            0 => "-inf".to_string(),
            1 => parts.pop().unwrap(),
            _ => format!("max({})", parts.join(", ")),
        }
    }
}

impl fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("k"))
    }
}

impl fmt::Debug for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
