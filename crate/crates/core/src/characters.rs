//! Class functions on `S_n`: irreducible characters, inner products,
//! induction and restriction along `S_{n-1} <= S_n`.

use crate::jsonout::J;
use crate::partitions::{cycle_types, factorial, partitions, CycleType, Partition};
use crate::rational::{rat_i64, render, Rat};
use crate::truncation_cap;
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CharacterError {
    #[error("level mismatch: class functions live on S_{0} and S_{1}")]
    LevelMismatch(u32, u32),
    #[error(
        "truncation cap exceeded: n = {n} > cap = {cap} (set {} to raise it)",
        crate::CAP_ENV_VAR
    )]
    CapExceeded { n: u32, cap: u32 },
}

/// A rational-valued function on the conjugacy classes of a fixed `S_n`.
///
/// Values are stored in the canonical cycle-type order of
/// [`cycle_types`]`(n)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassFunction {
    n: u32,
    values: Vec<Rat>,
}

impl ClassFunction {
    pub fn new(n: u32, values: Vec<Rat>) -> Self {
        assert_eq!(values.len(), partitions(n).len());
        ClassFunction { n, values }
    }

    pub fn from_fn(n: u32, f: impl FnMut(&Partition) -> Rat) -> Self {
        let values = partitions(n).iter().map(f).collect();
        ClassFunction { n, values }
    }

    pub fn zero(n: u32) -> Self {
        Self::from_fn(n, |_| Rat::zero())
    }

    /// The character of the trivial representation.
    pub fn trivial(n: u32) -> Self {
        Self::from_fn(n, |_| Rat::one())
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn value_at(&self, t: &Partition) -> &Rat {
        let idx = partitions(self.n)
            .iter()
            .position(|p| p == t)
            .expect("cycle type of the wrong level");
        &self.values[idx]
    }

    /// Value at the identity class `(1^n)`.
    pub fn dimension(&self) -> Rat {
        match self.values.last() {
            Some(v) => v.clone(),
            None => unreachable!("every level has at least one class"),
        }
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        assert_eq!(self.n, other.n);
        ClassFunction {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &ClassFunction) -> ClassFunction {
        assert_eq!(self.n, other.n);
        ClassFunction {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> ClassFunction {
        ClassFunction {
            n: self.n,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ClassFunction(n={}, [", self.n)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "])")
    }
}

/// The irreducible character of `S_n` indexed by `lambda`, computed by the
/// Murnaghan-Nakayama border-strip recursion in beta-number form.
pub fn irreducible_character(lambda: &Partition) -> Result<ClassFunction, CharacterError> {
    let n = lambda.n();
    let cap = truncation_cap();
    if n > cap {
        return Err(CharacterError::CapExceeded { n, cap });
    }
    Ok(ClassFunction::from_fn(n, |t| {
        Rat::from_integer(mn_value(lambda.parts(), t.parts()))
    }))
}

fn mn_value(lambda: &[u32], mu: &[u32]) -> BigInt {
    if mu.is_empty() {
        return BigInt::one();
    }
    let strip = mu[0] as i64;
    let rest = &mu[1..];
    let m = lambda.len();
    // beta numbers: lambda_i + (m - i), strictly decreasing
    let beta: Vec<i64> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (m - 1 - i) as i64)
        .collect();
    let mut total = BigInt::zero();
    for (pos, &b) in beta.iter().enumerate() {
        let target = b - strip;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        let height = beta.iter().filter(|&&c| target < c && c < b).count();
        let mut new_beta = beta.clone();
        new_beta[pos] = target;
        new_beta.sort_unstable_by(|a, b| b.cmp(a));
        let new_lambda: Vec<u32> = new_beta
            .iter()
            .enumerate()
            .map(|(i, &v)| (v - (m - 1 - i) as i64) as u32)
            .filter(|&p| p > 0)
            .collect();
        let term = mn_value(&new_lambda, rest);
        if height % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `(1/n!) * sum over cycle types of classSize * f * g`.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<Rat, CharacterError> {
    if f.level() != g.level() {
        return Err(CharacterError::LevelMismatch(f.level(), g.level()));
    }
    let n = f.level();
    let mut total = Rat::zero();
    for (i, ct) in cycle_types(n).iter().enumerate() {
        total += rat_i64(ct.class_size as i64) * &f.values[i] * &g.values[i];
    }
    Ok(total / rat_i64(factorial(n) as i64))
}

/// Induction along `S_{n} <= S_{n+1}`: the induced class function takes a
/// cycle type to `m_1 * f(type minus one fixed point)`, zero when the type
/// has no fixed point.
pub fn induce(f: &ClassFunction) -> ClassFunction {
    let n = f.level() + 1;
    ClassFunction::from_fn(n, |t| match t.remove_one_part(1) {
        Some(smaller) => rat_i64(t.multiplicity(1) as i64) * f.value_at(&smaller),
        None => Rat::zero(),
    })
}

/// Restriction along `S_{n-1} <= S_n`: evaluate on the type with an extra
/// fixed point.
pub fn restrict(f: &ClassFunction) -> Option<ClassFunction> {
    let n = f.level();
    if n == 0 {
        return None;
    }
    Some(ClassFunction::from_fn(n - 1, |t| {
        f.value_at(&t.with_extra_part(1)).clone()
    }))
}

/// Character table of `S_n` in the exportable JSON shape:
/// `{"n":..,"classes":[[parts, size],..],"irreducibles":{"(λ)":["p/q",..]}}`.
pub fn character_table_json(n: u32) -> Result<String, CharacterError> {
    let classes: Vec<J> = cycle_types(n)
        .iter()
        .map(
            |CycleType {
                 partition,
                 class_size,
             }| {
                J::Arr(vec![
                    J::Arr(
                        partition
                            .parts()
                            .iter()
                            .map(|&p| J::Int(p as i64))
                            .collect(),
                    ),
                    J::Int(*class_size as i64),
                ])
            },
        )
        .collect();
    let mut irreducibles = Vec::new();
    for lambda in partitions(n) {
        let chi = irreducible_character(&lambda)?;
        irreducibles.push((
            lambda.to_string(),
            J::Arr(chi.values().iter().map(|v| J::Str(render(v))).collect()),
        ));
    }
    Ok(J::Obj(vec![
        ("n".into(), J::Int(n as i64)),
        ("classes".into(), J::Arr(classes)),
        ("irreducibles".into(), J::Obj(irreducibles)),
    ])
    .render_pretty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_i64;

    /// Hook-length count of standard Young tableaux; the independent oracle
    /// for character degrees.
    fn hook_length_count(lambda: &Partition) -> u64 {
        let parts = lambda.parts();
        let n = lambda.n();
        if parts.is_empty() {
            return 1;
        }
        let conj = |col: u32| parts.iter().filter(|&&p| p > col).count() as u64;
        let mut denom: u64 = 1;
        for (i, &row) in parts.iter().enumerate() {
            for j in 0..row {
                let arm = (row - j - 1) as u64;
                let leg = conj(j) - (i as u64) - 1;
                denom *= arm + leg + 1;
            }
        }
        factorial(n) / denom
    }

    #[test]
    fn trivial_character_is_constant_one() {
        for n in 0..=6 {
            let lambda = if n == 0 {
                Partition::empty()
            } else {
                Partition::new(vec![n]).unwrap()
            };
            let chi = irreducible_character(&lambda).unwrap();
            assert_eq!(chi, ClassFunction::trivial(n));
        }
    }

    #[test]
    fn degree_matches_hook_length_formula() {
        for n in 0..=8u32 {
            for lambda in partitions(n) {
                let chi = irreducible_character(&lambda).unwrap();
                assert_eq!(
                    chi.dimension(),
                    rat_i64(hook_length_count(&lambda) as i64),
                    "lambda = {lambda}"
                );
            }
        }
    }

    #[test]
    fn standard_character_counts_fixed_points_minus_one() {
        for n in 2..=8u32 {
            let lambda = Partition::new(vec![n - 1, 1]).unwrap();
            let chi = irreducible_character(&lambda).unwrap();
            for t in partitions(n) {
                let expected = rat_i64(t.multiplicity(1) as i64 - 1);
                assert_eq!(*chi.value_at(&t), expected, "n = {n}, type {t}");
            }
        }
    }

    #[test]
    fn two_two_at_identity() {
        let lambda = Partition::new(vec![2, 2]).unwrap();
        let chi = irreducible_character(&lambda).unwrap();
        assert_eq!(chi.dimension(), rat_i64(2));
    }

    #[test]
    fn orthonormality_up_to_eight() {
        for n in 0..=8u32 {
            let chars: Vec<_> = partitions(n)
                .iter()
                .map(|l| irreducible_character(l).unwrap())
                .collect();
            for (i, f) in chars.iter().enumerate() {
                for (j, g) in chars.iter().enumerate() {
                    let ip = inner_product(f, g).unwrap();
                    let expected = if i == j { rat_i64(1) } else { rat_i64(0) };
                    assert_eq!(ip, expected, "n = {n}, i = {i}, j = {j}");
                }
            }
        }
    }

    #[test]
    fn column_orthogonality() {
        // sum over lambda of chi(s)chi(t) = 0 for s != t, and n!/classSize(s)
        // for s = t
        for n in 1..=6u32 {
            let chars: Vec<_> = partitions(n)
                .iter()
                .map(|l| irreducible_character(l).unwrap())
                .collect();
            let types = cycle_types(n);
            for (si, s) in types.iter().enumerate() {
                for (ti, _t) in types.iter().enumerate() {
                    let sum: Rat = chars
                        .iter()
                        .map(|c| &c.values()[si] * &c.values()[ti])
                        .sum();
                    let expected = if si == ti {
                        rat_i64((factorial(n) / s.class_size) as i64)
                    } else {
                        rat_i64(0)
                    };
                    assert_eq!(sum, expected, "n = {n}, s = {si}, t = {ti}");
                }
            }
        }
    }

    #[test]
    fn frobenius_reciprocity_all_irreducible_pairs() {
        for n in 1..=7u32 {
            let lower: Vec<_> = partitions(n - 1)
                .iter()
                .map(|l| irreducible_character(l).unwrap())
                .collect();
            let upper: Vec<_> = partitions(n)
                .iter()
                .map(|l| irreducible_character(l).unwrap())
                .collect();
            for f in &lower {
                let ind = induce(f);
                for g in &upper {
                    let lhs = inner_product(&ind, g).unwrap();
                    let rhs = inner_product(f, &restrict(g).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "n = {n}");
                }
            }
        }
    }

    #[test]
    fn induction_examples() {
        // trivial from S_2 to S_3: degree 3
        let ind = induce(&ClassFunction::trivial(2));
        assert_eq!(ind.dimension(), rat_i64(3));
        // Ind of the trivial of S_2 is trivial + standard of S_3
        let expected = irreducible_character(&Partition::new(vec![3]).unwrap())
            .unwrap()
            .add(&irreducible_character(&Partition::new(vec![2, 1]).unwrap()).unwrap());
        assert_eq!(ind, expected);
        // degree multiplies by the index n
        for n in 1..=6u32 {
            for lambda in partitions(n - 1) {
                let f = irreducible_character(&lambda).unwrap();
                let ind = induce(&f);
                assert_eq!(ind.dimension(), rat_i64(n as i64) * f.dimension());
            }
        }
    }

    #[test]
    fn two_subsets_permutation_character_self_inner_product() {
        // S_4 acting on 2-subsets: character C(fix,2) + (#2-cycles); the
        // orbit count of S_4 on ordered pairs of 2-subsets is 3.
        let f = ClassFunction::from_fn(4, |t| {
            let fix = t.multiplicity(1) as i64;
            rat_i64(fix * (fix - 1) / 2 + t.multiplicity(2) as i64)
        });
        assert_eq!(inner_product(&f, &f).unwrap(), rat_i64(3));
    }

    #[test]
    fn cap_is_enforced() {
        let lambda = Partition::new(vec![11, 1]).unwrap();
        assert!(matches!(
            irreducible_character(&lambda),
            Err(CharacterError::CapExceeded { .. })
        ));
    }

    #[test]
    fn character_table_export_shape() {
        let text = character_table_json(3).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["n"], serde_json::json!(3));
        // classes in canonical order with sizes
        assert_eq!(
            v["classes"],
            serde_json::json!([[[3], 2], [[2, 1], 3], [[1, 1, 1], 1]])
        );
        // values follow the class order (3), (2,1), (1,1,1)
        assert_eq!(
            v["irreducibles"]["(2,1)"],
            serde_json::json!(["-1/1", "0/1", "2/1"])
        );
        // keys appear in canonical partition order, not alphabetical
        let table_pos = text.find("\"(3)\"").unwrap();
        assert!(table_pos < text.find("\"(2,1)\"").unwrap());
        assert!(text.find("\"(2,1)\"").unwrap() < text.find("\"(1,1,1)\"").unwrap());
        // deterministic
        assert_eq!(character_table_json(3).unwrap(), text);
    }
}
