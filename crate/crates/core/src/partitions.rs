//! Partitions of `n` and conjugacy-class data for the symmetric group `S_n`.

use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("partition parts must be weakly decreasing")]
    NotSorted,
}

/// A partition: a weakly decreasing list of positive integers.
///
/// The derived-looking `Ord` is *not* plain lexicographic: it is the
/// canonical reverse-lexicographic order used for every partition-keyed map
/// and serialization in this crate, so that `(n)` comes first and
/// `(1,1,...,1)` last. `partitions(n)` enumerates in this same order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotSorted);
        }
        Ok(Partition { parts })
    }

    /// Builds from arbitrary positive parts, sorting them decreasingly.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of parts equal to `l`.
    pub fn multiplicity(&self, l: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == l).count() as u32
    }

    /// Removes one part equal to `l`, if present.
    pub fn remove_one_part(&self, l: u32) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == l)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }

    /// Adds one part equal to `l`, keeping parts sorted.
    pub fn with_extra_part(&self, l: u32) -> Partition {
        assert!(l > 0);
        let mut parts = self.parts.clone();
        let pos = parts.iter().position(|&p| p < l).unwrap_or(parts.len());
        parts.insert(pos, l);
        Partition { parts }
    }

    /// Everything after the first row: `(5,3,1) -> (3,1)`.
    pub fn tail(&self) -> Partition {
        Partition {
            parts: self.parts.iter().skip(1).copied().collect(),
        }
    }

    /// Size of the conjugacy class of `S_n` with this cycle type:
    /// `n! / prod_l (l^{m_l} m_l!)`.
    pub fn class_size(&self) -> u64 {
        let mut denom: u64 = 1;
        let mut i = 0;
        while i < self.parts.len() {
            let l = self.parts[i] as u64;
            let mut m = 0u64;
            while i < self.parts.len() && self.parts[i] as u64 == l {
                m += 1;
                i += 1;
            }
            for j in 1..=m {
                denom *= j * l; // accumulates m! * l^m
            }
        }
        factorial(self.n()) / denom
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        // reverse lexicographic: larger parts sort first
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A conjugacy class of `S_n`: its cycle type and class size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleType {
    pub partition: Partition,
    pub class_size: u64,
}

/// All partitions of `n`, each exactly once, in reverse lexicographic order:
/// `(n)` first, `(1^n)` last.
pub fn partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(n, n, &mut current, &mut out);
    out
}

fn descend(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    let top = remaining.min(max_part);
    for p in (1..=top).rev() {
        current.push(p);
        descend(remaining - p, p, current, out);
        current.pop();
    }
}

/// The conjugacy classes of `S_n`, in the canonical partition order.
pub fn cycle_types(n: u32) -> Vec<CycleType> {
    partitions(n)
        .into_iter()
        .map(|p| {
            let class_size = p.class_size();
            CycleType {
                partition: p,
                class_size,
            }
        })
        .collect()
}

pub fn factorial(n: u32) -> u64 {
    assert!(n <= 20, "factorial overflow");
    (1..=n as u64).product()
}
