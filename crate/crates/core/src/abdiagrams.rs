//! ab-diagrams: orbits of pairs `A: k^n -> k^m`, `B: k^m -> k^n` with `AB`
//! and `BA` nilpotent, written as multisets of alternating a/b strings.
//!
//! Each row is an indecomposable chain `e_1 -A-> f_1 -B-> e_2 -A-> ...`
//! where the a-letters are basis vectors of `k^n` and the b-letters basis
//! vectors of `k^m`. Counting letters row by row gives the Jordan types:
//! the a-part is the type of `BA`, the b-part the type of `AB`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::{ExactMatrix, FieldSpec};
use crate::partitions::Partition;

/// One alternating row: `a_count` a-letters separated by b's, optionally
/// with a b in front and/or behind. A row without a-letters is the single
/// letter `b`, stored with `leading_b = true`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ABRow {
    pub a_count: usize,
    pub leading_b: bool,
    pub trailing_b: bool,
}

impl ABRow {
    pub fn new(a_count: usize, leading_b: bool, trailing_b: bool) -> Self {
        if a_count == 0 {
            Self::single_b()
        } else {
            ABRow {
                a_count,
                leading_b,
                trailing_b,
            }
        }
    }

    pub fn single_b() -> Self {
        ABRow {
            a_count: 0,
            leading_b: true,
            trailing_b: false,
        }
    }

    pub fn b_count(&self) -> usize {
        if self.a_count == 0 {
            1
        } else {
            self.a_count - 1 + usize::from(self.leading_b) + usize::from(self.trailing_b)
        }
    }

    pub fn len(&self) -> usize {
        self.a_count + self.b_count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The letters of the row, left to right; `true` for `a`.
    pub fn letters(&self) -> Vec<bool> {
        if self.a_count == 0 {
            return vec![false];
        }
        let mut out = Vec::with_capacity(self.len());
        if self.leading_b {
            out.push(false);
        }
        for i in 0..self.a_count {
            if i > 0 {
                out.push(false);
            }
            out.push(true);
        }
        if self.trailing_b {
            out.push(false);
        }
        out
    }

    pub fn word(&self) -> String {
        self.letters()
            .iter()
            .map(|&x| if x { 'a' } else { 'b' })
            .collect()
    }

    // Longer rows first, matching the usual top-to-bottom presentation.
    fn sort_key(&self) -> impl Ord {
        (
            std::cmp::Reverse(self.len()),
            std::cmp::Reverse(self.a_count),
            self.leading_b,
            self.trailing_b,
        )
    }
}

impl FromStr for ABRow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters: Vec<char> = s.chars().collect();
        if letters.is_empty() {
            return Err(Error::InvalidDiagram("empty row".into()));
        }
        if let Some(c) = letters.iter().find(|c| **c != 'a' && **c != 'b') {
            return Err(Error::InvalidDiagram(format!("letter {c:?} in row {s:?}")));
        }
        if letters.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidDiagram(format!(
                "row {s:?} does not alternate"
            )));
        }
        let a_count = letters.iter().filter(|&&c| c == 'a').count();
        Ok(ABRow::new(
            a_count,
            letters[0] == 'b',
            letters[letters.len() - 1] == 'b',
        ))
    }
}

impl fmt::Display for ABRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

/// A multiset of rows. Rows are kept sorted so equality is multiset equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct ABDiagram {
    rows: Vec<RowKey>,
}

// Wrapper giving rows a total order consistent with the display order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct RowKey(ABRow);

impl PartialOrd for RowKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RowKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.sort_key().cmp(&other.0.sort_key())
    }
}

impl ABDiagram {
    pub fn new(rows: Vec<ABRow>) -> Self {
        let mut rows: Vec<RowKey> = rows.into_iter().map(RowKey).collect();
        rows.sort();
        ABDiagram { rows }
    }

    pub fn rows(&self) -> impl Iterator<Item = &ABRow> + '_ {
        self.rows.iter().map(|r| &r.0)
    }

    pub fn a_part(&self) -> Partition {
        Partition::from_unsorted(self.rows().map(|r| r.a_count))
    }

    pub fn b_part(&self) -> Partition {
        Partition::from_unsorted(self.rows().map(ABRow::b_count))
    }

    /// Number of a-letters: the dimension of the source of `A`.
    pub fn a_total(&self) -> usize {
        self.rows().map(|r| r.a_count).sum()
    }

    pub fn b_total(&self) -> usize {
        self.rows().map(ABRow::b_count).sum()
    }

    pub fn words(&self) -> Vec<String> {
        self.rows().map(ABRow::word).collect()
    }
}

impl TryFrom<Vec<String>> for ABDiagram {
    type Error = Error;

    fn try_from(words: Vec<String>) -> Result<Self> {
        Ok(ABDiagram::new(
            words
                .iter()
                .map(|w| w.parse())
                .collect::<Result<Vec<_>>>()?,
        ))
    }
}

impl From<ABDiagram> for Vec<String> {
    fn from(d: ABDiagram) -> Self {
        d.words()
    }
}

impl FromStr for ABDiagram {
    type Err = Error;

    /// Comma-separated words, optionally parenthesized: `(babab,bab,a)`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Ok(ABDiagram::new(Vec::new()));
        }
        Ok(ABDiagram::new(
            inner
                .split(',')
                .map(|w| w.trim().parse())
                .collect::<Result<Vec<_>>>()?,
        ))
    }
}

impl fmt::Display for ABDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.words().join(","))
    }
}

/// Calls `visit` with every placement `(j_1, ..., j_s)`, `j_i` indexing
/// into `costs`, whose total cost does not exceed `budget`. The second
/// argument is the unused budget.
fn for_each_placement(
    s: usize,
    costs: &[usize],
    budget: usize,
    visit: &mut impl FnMut(&[usize], usize),
) {
    fn rec(
        i: usize,
        s: usize,
        costs: &[usize],
        left: usize,
        cur: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize], usize),
    ) {
        if i == s {
            visit(cur, left);
            return;
        }
        for (j, &cost) in costs.iter().enumerate() {
            if cost > left {
                continue;
            }
            cur.push(j);
            rec(i + 1, s, costs, left - cost, cur, visit);
            cur.pop();
        }
    }
    rec(0, s, costs, budget, &mut Vec::with_capacity(s), visit);
}

/// b-parts of all ab-diagrams whose a-part is exactly `eta` and which have
/// `weight(eta) + a` b-letters.
///
/// After the `p_i - 1` interior b's, `s + a` extra b's remain; each row takes
/// `j_i` in `{0, 1, 2}` of them at its ends and the rest form singleton rows.
pub fn enumerate_b_parts(eta: &Partition, a: usize) -> BTreeSet<Partition> {
    let s = eta.len();
    let extra = s + a;
    let mut out = BTreeSet::new();
    for_each_placement(s, &[0, 1, 2], extra, &mut |js, singles| {
        let sizes = eta
            .parts()
            .iter()
            .zip(js)
            .map(|(p, j)| p - 1 + j)
            .chain(std::iter::repeat_n(1, singles));
        out.insert(Partition::from_unsorted(sizes));
    });
    out
}

/// All ab-diagrams with a-part `eta` and `weight(eta) + a` b-letters,
/// distinguishing a leading from a trailing extra b.
pub fn enumerate_diagrams(eta: &Partition, a: usize) -> Vec<ABDiagram> {
    let s = eta.len();
    let extra = s + a;
    let mut out = BTreeSet::new();
    // option 0: none, 1: leading, 2: trailing, 3: both
    for_each_placement(s, &[0, 1, 1, 2], extra, &mut |js, singles| {
        let mut rows: Vec<ABRow> = eta
            .parts()
            .iter()
            .zip(js)
            .map(|(&p, &j)| ABRow::new(p, j == 1 || j == 3, j == 2 || j == 3))
            .collect();
        rows.extend(std::iter::repeat_n(ABRow::single_b(), singles));
        out.insert(ABDiagram::new(rows));
    });
    out.into_iter().collect()
}

/// The first diagram, in enumeration order, with a-part `eta`, `a` extra
/// b-letters and b-part `nu`.
pub fn diagram_with_b_part(eta: &Partition, a: usize, nu: &Partition) -> Option<ABDiagram> {
    let mut found = None;
    for_each_placement(eta.len(), &[0, 1, 2], eta.len() + a, &mut |js, singles| {
        if found.is_some() {
            return;
        }
        let sizes = eta
            .parts()
            .iter()
            .zip(js)
            .map(|(p, j)| p - 1 + j)
            .chain(std::iter::repeat_n(1, singles));
        if Partition::from_unsorted(sizes) == *nu {
            let mut rows: Vec<ABRow> = eta
                .parts()
                .iter()
                .zip(js)
                .map(|(&p, &j)| ABRow::new(p, j >= 1, j == 2))
                .collect();
            rows.extend(std::iter::repeat_n(ABRow::single_b(), singles));
            found = Some(ABDiagram::new(rows));
        }
    });
    found
}

/// The dominance-maximum of [`enumerate_b_parts`], checked against
/// `eta.add(a)`.
pub fn max_b_part(eta: &Partition, a: usize) -> Result<Partition> {
    let parts = enumerate_b_parts(eta, a);
    let maxima: Vec<&Partition> = parts
        .iter()
        .filter(|cand| {
            parts
                .iter()
                .all(|other| cand.dominates(other).unwrap_or(false))
        })
        .collect();
    let expected = eta.add(a);
    match maxima.as_slice() {
        [max] if **max == expected => Ok((*max).clone()),
        [max] => Err(Error::Internal(format!(
            "maximum b-part {max} of {eta}+{a} differs from {expected}"
        ))),
        _ => Err(Error::Internal(format!(
            "b-parts of {eta}+{a} have {} dominance maxima",
            maxima.len()
        ))),
    }
}

/// The placement that puts the extra b's as high as possible; its b-part is
/// `eta.add(a)`.
pub fn greedy_diagram(eta: &Partition, a: usize) -> ABDiagram {
    let s = eta.len();
    let mut rows = Vec::with_capacity(s.max(a));
    if a >= s {
        rows.extend(eta.parts().iter().map(|&p| ABRow::new(p, true, true)));
        rows.extend(std::iter::repeat_n(ABRow::single_b(), a - s));
    } else {
        let l = (s + a) / 2;
        let odd = (s + a) % 2 == 1;
        for (i, &p) in eta.parts().iter().enumerate() {
            let row = if i < l {
                ABRow::new(p, true, true)
            } else if odd && i == l {
                ABRow::new(p, false, true)
            } else {
                ABRow::new(p, false, false)
            };
            rows.push(row);
        }
    }
    ABDiagram::new(rows)
}

/// Explicit pair `(A, B)` in the orbit of `delta`: each letter maps to its
/// right neighbour, or to zero at the end of its row.
///
/// `A` is `b_total x a_total` and `B` is `a_total x b_total`.
pub fn build_pair(delta: &ABDiagram, field: FieldSpec) -> (ExactMatrix, ExactMatrix) {
    let (n, m) = (delta.a_total(), delta.b_total());
    let mut a_mat = ExactMatrix::zeros(field, m, n);
    let mut b_mat = ExactMatrix::zeros(field, n, m);
    let (mut next_a, mut next_b) = (0usize, 0usize);
    for row in delta.rows() {
        // (is_a, global index) per letter
        let indexed: Vec<(bool, usize)> = row
            .letters()
            .into_iter()
            .map(|is_a| {
                let idx = if is_a { &mut next_a } else { &mut next_b };
                *idx += 1;
                (is_a, *idx - 1)
            })
            .collect();
        for w in indexed.windows(2) {
            match (w[0], w[1]) {
                ((true, from), (false, to)) => a_mat.set(to, from, 1),
                ((false, from), (true, to)) => b_mat.set(to, from, 1),
                _ => unreachable!("rows alternate"),
            }
        }
    }
    (a_mat, b_mat)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn f() -> FieldSpec {
        FieldSpec::default()
    }

    #[test]
    fn row_parsing() {
        let r: ABRow = "babab".parse().unwrap();
        assert_eq!(r, ABRow::new(2, true, true));
        assert_eq!(r.b_count(), 3);
        assert_eq!("b".parse::<ABRow>().unwrap(), ABRow::single_b());
        assert_eq!(ABRow::single_b().word(), "b");
        assert!("aab".parse::<ABRow>().is_err());
        assert!("".parse::<ABRow>().is_err());
        assert!("abc".parse::<ABRow>().is_err());
    }

    #[test]
    fn diagram_parts() {
        let d: ABDiagram = "(a,babab,bab)".parse().unwrap();
        assert_eq!(d.words(), vec!["babab", "bab", "a"]);
        assert_eq!(d.a_part(), p(&[2, 1, 1]));
        assert_eq!(d.b_part(), p(&[3, 2]));
        assert_eq!((d.a_total(), d.b_total()), (4, 5));
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"["babab","bab","a"]"#);
        let back: ABDiagram = serde_json::from_str(r#"["a","bab","babab"]"#).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn enumerate_examples() {
        let one = enumerate_b_parts(&p(&[1]), 1);
        assert_eq!(one, [p(&[2]), p(&[1, 1])].into_iter().collect());
        assert!(enumerate_b_parts(&p(&[2, 1, 1]), 1).contains(&p(&[3, 2])));
        assert_eq!(
            enumerate_b_parts(&Partition::empty(), 0),
            [Partition::empty()].into_iter().collect()
        );
        assert!(enumerate_b_parts(&p(&[2, 2]), 0).contains(&p(&[3, 1])));
    }

    #[test]
    fn max_examples() {
        assert_eq!(max_b_part(&p(&[1]), 1).unwrap(), p(&[2]));
        assert_eq!(max_b_part(&p(&[2, 1, 1]), 1).unwrap(), p(&[3, 2]));
        assert_eq!(
            max_b_part(&Partition::column(5), 3).unwrap(),
            p(&[2, 2, 2, 2])
        );
    }

    #[test]
    fn greedy_matches_add() {
        for eta in crate::partitions::partitions_up_to(7) {
            for a in 0..5 {
                let g = greedy_diagram(&eta, a);
                assert_eq!(g.a_part(), eta);
                assert_eq!(g.b_part(), eta.add(a), "{eta} + {a}");
                assert_eq!(g.b_total(), eta.weight() + a);
            }
        }
    }

    #[test]
    fn pair_examples() {
        let ab: ABDiagram = "(ab)".parse().unwrap();
        let (a, b) = build_pair(&ab, f());
        assert_eq!(a, ExactMatrix::from_rows(f(), &[vec![1]]));
        assert_eq!(b, ExactMatrix::from_rows(f(), &[vec![0]]));
        assert!(b.mul(&a).unwrap().is_zero());

        let d: ABDiagram = "(babab,bab,a)".parse().unwrap();
        let (a, b) = build_pair(&d, f());
        assert_eq!(b.mul(&a).unwrap().jordan_type().unwrap(), p(&[2, 1, 1]));
        assert_eq!(a.mul(&b).unwrap().jordan_type().unwrap(), p(&[3, 2]));
        assert!(!a.is_injective());

        let d: ABDiagram = "(abab)".parse().unwrap();
        let (a, b) = build_pair(&d, f());
        assert_eq!(b.mul(&a).unwrap().jordan_type().unwrap(), p(&[2]));
        assert_eq!(a.mul(&b).unwrap().jordan_type().unwrap(), p(&[2]));
    }

    #[test]
    fn diagram_enumeration_counts_letters() {
        for eta in crate::partitions::partitions_up_to(4) {
            for a in 0..3 {
                let diagrams = enumerate_diagrams(&eta, a);
                let b_parts: BTreeSet<Partition> = diagrams.iter().map(ABDiagram::b_part).collect();
                assert_eq!(b_parts, enumerate_b_parts(&eta, a));
                for d in diagrams {
                    assert_eq!(d.a_part(), eta);
                    assert_eq!(d.b_total(), eta.weight() + a);
                }
            }
        }
    }
}
