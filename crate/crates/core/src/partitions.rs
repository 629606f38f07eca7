//! Partitions, dimension vectors of the type-A chain, and the partition
//! arithmetic that governs the image of the quotient map.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Partitions label nilpotent Jordan types: the parts are the block sizes.
/// The empty partition is the unique partition of zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts the given sizes into decreasing order and drops zeros.
    pub fn from_unsorted<I: IntoIterator<Item = usize>>(sizes: I) -> Self {
        let mut parts: Vec<usize> = sizes.into_iter().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(1, 1, ..., 1)` with `n` parts.
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// Largest part, zero for the empty partition.
    pub fn largest(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// The conjugate partition: column lengths of the Young diagram.
    pub fn dual(&self) -> Partition {
        let cols = self.largest();
        Partition(
            (1..=cols)
                .map(|i| self.0.iter().take_while(|&&p| p >= i).count())
                .collect(),
        )
    }

    /// Dominance order on partitions of the same weight.
    ///
    /// `self >= other` iff every prefix sum of `self` is at least the
    /// corresponding prefix sum of `other`, both padded with zeros.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        let (w1, w2) = (self.weight(), other.weight());
        if w1 != w2 {
            return Err(Error::IncomparableWeights {
                left: w1,
                right: w2,
            });
        }
        let len = self.len().max(other.len());
        let (mut s1, mut s2) = (0usize, 0usize);
        for i in 0..len {
            s1 += self.0.get(i).copied().unwrap_or(0);
            s2 += other.0.get(i).copied().unwrap_or(0);
            if s1 < s2 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Dominance as a partial order: `None` for incomparable pairs or
    /// mismatched weights.
    pub fn dominance_cmp(&self, other: &Partition) -> Option<Ordering> {
        let ge = self.dominates(other).ok()?;
        let le = other.dominates(self).ok()?;
        match (ge, le) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Greater),
            (false, true) => Some(Ordering::Less),
            (false, false) => None,
        }
    }

    /// The partition `self + a`: the dominance-largest Jordan type of `AB`
    /// over pairs `A: k^n -> k^(n+a)`, `B: k^(n+a) -> k^n` with `BA` of
    /// type `self`.
    ///
    /// With `s` parts: if `a >= s` every part grows by one and `a - s` ones
    /// are appended. Otherwise the first `l` parts grow and the remaining
    /// ones shrink, where `s + a = 2l`, or `s + a = 2l + 1` with part `l + 1`
    /// left unchanged. Parts shrinking to zero are dropped.
    pub fn add(&self, a: usize) -> Partition {
        let s = self.len();
        let parts = &self.0;
        if a >= s {
            let mut out: Vec<usize> = parts.iter().map(|p| p + 1).collect();
            out.extend(std::iter::repeat_n(1, a - s));
            return Partition(out);
        }
        let l = (s + a) / 2;
        let odd = (s + a) % 2 == 1;
        let mut out = Vec::with_capacity(s);
        for (i, &p) in parts.iter().enumerate() {
            let q = if i < l {
                p + 1
            } else if odd && i == l {
                p
            } else {
                p - 1
            };
            if q > 0 {
                out.push(q);
            }
        }
        Partition(out)
    }

    /// Dimension vector `(n_1, ..., n_t)` with `t` the largest part:
    /// `n_i` is the number of boxes left after deleting the first `t - i`
    /// columns of the Young diagram.
    pub fn n_vector(&self) -> Result<DimVector> {
        if self.is_empty() {
            return Err(Error::EmptyPartition { op: "n_vector" });
        }
        let cols = self.dual().into_parts();
        let dims = cols
            .iter()
            .rev()
            .scan(0usize, |acc, &c| {
                *acc += c;
                Some(*acc)
            })
            .collect();
        DimVector::new(dims)
    }

    /// One line of `[]` glyphs per part.
    pub fn render_young(&self) -> String {
        self.0
            .iter()
            .map(|&p| "[]".repeat(p))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts the comma-separated shorthand `5,3,3,1`; an empty string or
    /// `()` is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_list(s)?)
    }
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of weight at most `n`, grouped by weight.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// The dimension vector `(n_1, ..., n_t)` of the chain
/// `U_1 <-> U_2 <-> ... <-> U_t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DimVector(Vec<usize>);

/// Classification of a dimension vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimVecTag {
    NotMonotone,
    MonotoneOnly,
    KraftProcesi,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimVecClass {
    pub tag: DimVecTag,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eta: Option<Partition>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Obstruction {
    NoObstruction,
    Reducible,
}

impl DimVector {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidDimVector("empty".into()));
        }
        if dims.contains(&0) {
            return Err(Error::InvalidDimVector(format!(
                "{dims:?} has a zero entry"
            )));
        }
        Ok(DimVector(dims))
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    /// Number of vertices `t`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `n_i` with 1-based index.
    pub fn get(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn last(&self) -> usize {
        *self.0.last().expect("dimension vectors are nonempty")
    }

    /// `n_1 < n_2 < ... < n_t`.
    pub fn is_strictly_monotone(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_weakly_monotone(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// `(n_1, n_2 - n_1, ..., n_t - n_(t-1))`; entries are meaningful only
    /// for weakly monotone vectors.
    fn differences(&self) -> Vec<usize> {
        let mut prev = 0;
        self.0
            .iter()
            .map(|&n| {
                let d = n - prev;
                prev = n;
                d
            })
            .collect()
    }

    fn require_strict(&self, op: &'static str) -> Result<()> {
        if self.is_strictly_monotone() {
            Ok(())
        } else {
            Err(Error::NotMonotone {
                op,
                kind: "strictly monotone",
                dims: self.0.clone(),
            })
        }
    }

    /// Kraft-Procesi vectors satisfy `n_1 <= n_2 - n_1 <= ... <= n_t - n_(t-1)`;
    /// for those the partition `eta` with `n(eta) = self` is recovered by
    /// dualizing the reversed difference sequence.
    pub fn classify(&self) -> DimVecClass {
        if !self.is_strictly_monotone() {
            return DimVecClass {
                tag: DimVecTag::NotMonotone,
                eta: None,
            };
        }
        let diffs = self.differences();
        if diffs.windows(2).all(|w| w[0] <= w[1]) {
            let cols = Partition(diffs.into_iter().rev().collect());
            DimVecClass {
                tag: DimVecTag::KraftProcesi,
                eta: Some(cols.dual()),
            }
        } else {
            DimVecClass {
                tag: DimVecTag::MonotoneOnly,
                eta: None,
            }
        }
    }

    /// `w - Cv` for `v = (n_1, ..., n_(t-1))`, `w = (0, ..., 0, n_t)` and `C`
    /// the Cartan matrix of type `A_(t-1)`.
    pub fn cartan_slack(&self) -> Result<Vec<i64>> {
        let t = self.len();
        if t < 2 {
            return Err(Error::TooShort {
                op: "cartan_slack",
                min: 2,
                got: t,
            });
        }
        let v: Vec<i64> = self.0[..t - 1].iter().map(|&n| n as i64).collect();
        let at = |i: isize| -> i64 {
            if i < 0 || i as usize >= v.len() {
                0
            } else {
                v[i as usize]
            }
        };
        Ok((0..t - 1)
            .map(|i| {
                let w = if i == t - 2 { self.last() as i64 } else { 0 };
                let ii = i as isize;
                w - (2 * at(ii) - at(ii - 1) - at(ii + 1))
            })
            .collect())
    }

    /// Generic Jordan type of the quotient map on the stable locus: the dual
    /// of the difference sequence sorted into decreasing order.
    pub fn mu(&self) -> Result<Partition> {
        self.require_strict("mu_of")?;
        Ok(Partition::from_unsorted(self.differences()).dual())
    }

    /// Jordan type `lambda` whose orbit closure is the image of the quotient
    /// map: start from `(1^(n_1))` and add `n_(i+1) - n_i` at each step.
    pub fn theta_image(&self) -> Result<Partition> {
        if !self.is_weakly_monotone() {
            return Err(Error::NotMonotone {
                op: "theta_image",
                kind: "weakly monotone",
                dims: self.0.clone(),
            });
        }
        let first = Partition::column(self.0[0]);
        Ok(self.0.windows(2).fold(first, |eta, w| eta.add(w[1] - w[0])))
    }

    /// `Reducible` when `lambda != mu`: the stable locus then cannot be dense
    /// in `Z`, so `Z` is reducible. `NoObstruction` certifies nothing.
    pub fn zss_density_obstruction(&self) -> Result<Obstruction> {
        self.require_strict("zss_density_obstruction")?;
        Ok(if self.theta_image()? == self.mu()? {
            Obstruction::NoObstruction
        } else {
            Obstruction::Reducible
        })
    }
}

impl TryFrom<Vec<usize>> for DimVector {
    type Error = Error;

    fn try_from(dims: Vec<usize>) -> Result<Self> {
        DimVector::new(dims)
    }
}

impl From<DimVector> for Vec<usize> {
    fn from(d: DimVector) -> Self {
        d.0
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

impl FromStr for DimVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DimVector::new(parse_list(s)?)
    }
}

/// Every strictly monotone dimension vector with `n_t <= max_last`.
pub fn strictly_monotone_up_to(max_last: usize) -> Vec<DimVector> {
    assert!(
        max_last < usize::BITS as usize,
        "max_last too large to enumerate"
    );
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << max_last) {
        let dims: Vec<usize> = (0..max_last)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| i + 1)
            .collect();
        out.push(DimVector(dims));
    }
    out.sort();
    out
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    let trimmed = s
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']'])
        .trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("{tok:?}: {e}")))
        })
        .collect()
}
