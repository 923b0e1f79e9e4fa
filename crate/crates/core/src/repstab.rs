//! Representation-stability diagnostics: irreducible multiplicities and
//! their stabilization, exact character-polynomial fits in the class
//! functions `Z_l` (number of `l`-cycles), and stable inner products.

use crate::characters::{inner_product, irreducible_character, CharacterError, ClassFunction};
use crate::fimod::Flag;
use crate::linalg::{solve_exact, SolveOutcome};
use crate::partitions::{cycle_types, partitions, Partition};
use crate::rational::{rat_i64, render, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum RepStabError {
    #[error("level {n}: multiplicity of {lambda} is {value}, not a nonnegative integer; the input is not a genuine character")]
    BadMultiplicity {
        n: u32,
        lambda: String,
        value: String,
    },
    #[error("level {n}: multiplicities account for dimension {reconstructed}, character says {expected}")]
    DimensionMismatch {
        n: u32,
        reconstructed: String,
        expected: String,
    },
    #[error("no exact character polynomial of degree <= {max_degree} on levels {from}..={to}")]
    NoExactFit { max_degree: u32, from: u32, to: u32 },
    #[error("fit window {from}..={to} is empty or out of range (levels 0..={max})")]
    BadWindow { from: u32, to: u32, max: u32 },
    #[error(transparent)]
    Character(#[from] CharacterError),
}

/// A monomial in the binomial basis: the product over `l` of
/// `C(Z_l, m_l)`, of degree `sum l * m_l`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CharMonomial {
    exponents: BTreeMap<u32, u32>,
}

impl CharMonomial {
    pub fn one() -> Self {
        CharMonomial {
            exponents: BTreeMap::new(),
        }
    }

    pub fn new(exponents: BTreeMap<u32, u32>) -> Self {
        let exponents = exponents.into_iter().filter(|&(_, m)| m > 0).collect();
        CharMonomial { exponents }
    }

    pub fn exponents(&self) -> &BTreeMap<u32, u32> {
        &self.exponents
    }

    pub fn degree(&self) -> i64 {
        self.exponents
            .iter()
            .map(|(&l, &m)| l as i64 * m as i64)
            .sum()
    }

    /// Value at a cycle type: `Z_l` is the number of parts equal to `l`.
    pub fn eval(&self, t: &Partition) -> Rat {
        let mut out = Rat::one();
        for (&l, &m) in &self.exponents {
            out *= binomial(t.multiplicity(l) as i64, m);
            if out.is_zero() {
                break;
            }
        }
        out
    }
}

impl fmt::Display for CharMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&l, &m) in &self.exponents {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if m == 1 {
                write!(f, "Z_{l}")?;
            } else {
                write!(f, "C(Z_{l},{m})")?;
            }
        }
        Ok(())
    }
}

fn binomial(z: i64, m: u32) -> Rat {
    let mut num = Rat::one();
    for t in 0..m as i64 {
        num *= rat_i64(z - t);
    }
    for t in 1..=m as i64 {
        num /= rat_i64(t);
    }
    num
}

/// A finite rational combination of [`CharMonomial`]s; evaluates to a class
/// function on every `S_n` simultaneously.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterPolynomial {
    coeffs: BTreeMap<CharMonomial, Rat>,
}

impl CharacterPolynomial {
    pub fn zero() -> Self {
        CharacterPolynomial {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn new(coeffs: BTreeMap<CharMonomial, Rat>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        CharacterPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &BTreeMap<CharMonomial, Rat> {
        &self.coeffs
    }

    pub fn degree(&self) -> i64 {
        self.coeffs
            .keys()
            .map(CharMonomial::degree)
            .max()
            .unwrap_or(-1)
    }

    /// Largest `l` with `Z_l` in the support.
    pub fn max_variable(&self) -> u32 {
        self.coeffs
            .keys()
            .flat_map(|m| m.exponents().keys().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, t: &Partition) -> Rat {
        self.coeffs.iter().map(|(m, c)| c * m.eval(t)).sum()
    }

    pub fn as_class_function(&self, n: u32) -> ClassFunction {
        ClassFunction::from_fn(n, |t| self.eval(t))
    }
}

impl fmt::Display for CharacterPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.coeffs {
            let negative = c < &Rat::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let constant_monomial = m.exponents().is_empty();
            if constant_monomial {
                write!(f, "{}", crate::rational::pretty(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", crate::rational::pretty(&abs))?;
            }
        }
        Ok(())
    }
}

/// Irreducible multiplicities per level, keyed by the padded shape: the
/// partition with its first row removed. Comparing these maps across levels
/// is what representation stability stabilizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    /// `tails[n]` maps a padded shape to its multiplicity at level `n`.
    tails: Vec<BTreeMap<Partition, u64>>,
}

impl MultiplicityTable {
    pub fn levels(&self) -> &[BTreeMap<Partition, u64>] {
        &self.tails
    }

    pub fn at_level(&self, n: u32) -> &BTreeMap<Partition, u64> {
        &self.tails[n as usize]
    }

    pub fn max_level(&self) -> u32 {
        (self.tails.len() - 1) as u32
    }
}

/// Decomposes level characters into irreducibles by inner products; every
/// multiplicity must come out a nonnegative integer and the dimensions must
/// reconcile.
pub fn decompose(chars: &[ClassFunction]) -> Result<MultiplicityTable, RepStabError> {
    let mut tails = Vec::with_capacity(chars.len());
    for (n, chi) in chars.iter().enumerate() {
        let n = n as u32;
        debug_assert_eq!(chi.level(), n, "chars[{n}] must live on S_{n}");
        let mut level = BTreeMap::new();
        let mut reconstructed = Rat::zero();
        for lambda in partitions(n) {
            let irr = irreducible_character(&lambda)?;
            let m = inner_product(chi, &irr)?;
            if m.is_zero() {
                continue;
            }
            if !m.is_integer() || m < Rat::zero() {
                return Err(RepStabError::BadMultiplicity {
                    n,
                    lambda: lambda.to_string(),
                    value: render(&m),
                });
            }
            reconstructed += &m * irr.dimension();
            let count: u64 = m.numer().to_string().parse().expect("small multiplicity");
            level.insert(lambda.tail(), count);
        }
        if reconstructed != chi.dimension() {
            return Err(RepStabError::DimensionMismatch {
                n,
                reconstructed: render(&reconstructed),
                expected: render(&chi.dimension()),
            });
        }
        tails.push(level);
    }
    Ok(MultiplicityTable { tails })
}

/// Smallest level from which the padded-shape multiplicity map is constant
/// through the top level. Flagged insufficient when only the last level
/// agrees with itself.
pub fn stabilization_onset(table: &MultiplicityTable) -> (u32, Flag) {
    let top = table.tails.len() - 1;
    let mut onset = top;
    while onset > 0 && table.tails[onset - 1] == table.tails[top] {
        onset -= 1;
    }
    let flag = if onset == top {
        Flag::InsufficientLevels
    } else {
        Flag::CertifiedAtTruncation
    };
    (onset as u32, flag)
}

#[derive(Clone, Debug)]
pub struct CharFit {
    pub poly: CharacterPolynomial,
    pub degree: i64,
    /// Whether the sampled window pins the coefficients uniquely.
    pub unique: bool,
    /// The inferred number of variables `r`: the largest `l` used.
    pub max_variable: u32,
    pub window: (u32, u32),
    /// Re-evaluated residuals over the window; always true for a returned
    /// fit, recorded for the report.
    pub residuals_zero: bool,
}

/// Exact least-degree interpolation of the level characters by a character
/// polynomial on the window, trying degree bounds `0..=max_degree` in turn.
/// No approximation: either some degree admits an exact solution on every
/// sampled cycle type, or the fit fails.
pub fn fit_character_polynomial(
    chars: &[ClassFunction],
    max_degree: u32,
    window: (u32, u32),
) -> Result<CharFit, RepStabError> {
    let (from, to) = window;
    let max = (chars.len() - 1) as u32;
    if from > to || to > max {
        return Err(RepStabError::BadWindow { from, to, max });
    }
    for target in 0..=max_degree {
        let monomials = monomials_up_to(target);
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for n in from..=to {
            let chi = &chars[n as usize];
            for ct in cycle_types(n) {
                rows.push(
                    monomials
                        .iter()
                        .map(|m| m.eval(&ct.partition))
                        .collect::<Vec<_>>(),
                );
                rhs.push(chi.value_at(&ct.partition).clone());
            }
        }
        if let SolveOutcome::Solved { x, unique } = solve_exact(rows, rhs, monomials.len()) {
            let poly =
                CharacterPolynomial::new(monomials.into_iter().zip(x).collect::<BTreeMap<_, _>>());
            let residuals_zero =
                (from..=to).all(|n| poly.as_class_function(n) == chars[n as usize]);
            assert!(residuals_zero, "exact solve must reproduce the samples");
            return Ok(CharFit {
                degree: poly.degree(),
                max_variable: poly.max_variable(),
                unique,
                window,
                residuals_zero,
                poly,
            });
        }
    }
    Err(RepStabError::NoExactFit {
        max_degree,
        from,
        to,
    })
}

/// All binomial-basis monomials of degree at most `d`, in a deterministic
/// order.
pub fn monomials_up_to(d: u32) -> Vec<CharMonomial> {
    let mut out = Vec::new();
    let mut current: BTreeMap<u32, u32> = BTreeMap::new();
    fn rec(l: u32, remaining: u32, current: &mut BTreeMap<u32, u32>, out: &mut Vec<CharMonomial>) {
        if l == 0 {
            out.push(CharMonomial::new(current.clone()));
            return;
        }
        let max_m = remaining / l;
        for m in 0..=max_m {
            if m > 0 {
                current.insert(l, m);
            }
            rec(l - 1, remaining - m * l, current, out);
            current.remove(&l);
        }
    }
    rec(d, d, &mut current, &mut out);
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Debug)]
pub struct InnerProducts {
    /// `(n, <chi_n, Q>)` per level.
    pub values: Vec<(u32, Rat)>,
    /// Start of the maximal constant suffix.
    pub onset: u32,
    pub flag: Flag,
}

/// Inner products of the level characters against a character polynomial,
/// with the level from which the value is constant through the top.
pub fn stable_inner_product(
    chars: &[ClassFunction],
    poly: &CharacterPolynomial,
) -> Result<InnerProducts, RepStabError> {
    let mut values = Vec::with_capacity(chars.len());
    for (n, chi) in chars.iter().enumerate() {
        let n = n as u32;
        let q = poly.as_class_function(n);
        values.push((n, inner_product(chi, &q)?));
    }
    let top = values.len() - 1;
    let mut onset = top;
    while onset > 0 && values[onset - 1].1 == values[top].1 {
        onset -= 1;
    }
    let flag = if onset == top {
        Flag::InsufficientLevels
    } else {
        Flag::CertifiedAtTruncation
    };
    Ok(InnerProducts {
        values,
        onset: onset as u32,
        flag,
    })
}
