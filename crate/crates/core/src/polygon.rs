//! Non-crossing dissections of a convex polygon with no triangular or
//! quadrilateral faces, and the map from claw-of-claws interval posets with
//! `n` leaves onto such dissections of the `(n+1)`-gon.
//!
//! An internal node `[a, b]` becomes the diagonal `(a, b + 1)`. The root
//! `[1, n]` would give `(1, n + 1)`, which is a side of the polygon, so it
//! contributes nothing.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{check_cap, Error, Result};
use crate::perm::ValueRange;
use crate::poset::IntervalPoset;

/// Largest polygon the enumerator will walk.
pub const DISSECTION_CAP: usize = 14;

/// Convex `m`-gon with vertices `1..m` in clockwise order, plus a set of
/// diagonals `(i, j)`, `i < j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PolygonDissection {
    m: usize,
    diagonals: BTreeSet<(usize, usize)>,
}

impl PolygonDissection {
    /// Checks that every pair is a diagonal; crossing and face sizes are
    /// checked by [`PolygonDissection::is_valid`].
    pub fn new(m: usize, diagonals: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if m < 3 {
            return Err(Error::input(format!(
                "a polygon needs 3 or more vertices, got {m}"
            )));
        }
        let mut set = BTreeSet::new();
        for (x, y) in diagonals {
            let (a, b) = (x.min(y), x.max(y));
            if a == 0 || b > m || b - a < 2 || (a, b) == (1, m) {
                return Err(Error::input(format!(
                    "({x},{y}) is not a diagonal of a {m}-gon"
                )));
            }
            set.insert((a, b));
        }
        Ok(PolygonDissection { m, diagonals: set })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn diagonals(&self) -> &BTreeSet<(usize, usize)> {
        &self.diagonals
    }

    pub fn is_non_crossing(&self) -> bool {
        let d: Vec<_> = self.diagonals.iter().collect();
        for (i, &&(a, b)) in d.iter().enumerate() {
            for &&(c, e) in &d[i + 1..] {
                if crosses((a, b), (c, e)) {
                    return false;
                }
            }
        }
        true
    }

    /// Faces of the subdivision, each as its sorted vertex list. Found by
    /// repeatedly cutting along the lexicographically first diagonal.
    pub fn faces(&self) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        split_faces(
            (1..=self.m).collect(),
            self.diagonals.iter().copied().collect(),
            &mut out,
        )?;
        Ok(out)
    }

    /// Non-crossing, and every face has at least five sides.
    pub fn is_valid(&self) -> bool {
        self.is_non_crossing()
            && self
                .faces()
                .map(|fs| fs.iter().all(|f| f.len() >= 5))
                .unwrap_or(false)
    }
}

fn crosses((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

fn split_faces(
    vertices: Vec<usize>,
    diagonals: Vec<(usize, usize)>,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    let Some(&(a, b)) = diagonals.iter().min() else {
        out.push(vertices);
        return Ok(());
    };
    let inner: Vec<usize> = vertices
        .iter()
        .copied()
        .filter(|&v| a <= v && v <= b)
        .collect();
    let outer: Vec<usize> = vertices
        .iter()
        .copied()
        .filter(|&v| v <= a || v >= b)
        .collect();
    let (mut inner_d, mut outer_d) = (Vec::new(), Vec::new());
    for &(c, d) in &diagonals {
        if (c, d) == (a, b) {
            continue;
        }
        if a <= c && d <= b {
            inner_d.push((c, d));
        } else if (c <= a || c >= b) && (d <= a || d >= b) {
            outer_d.push((c, d));
        } else {
            return Err(Error::input(format!(
                "diagonals ({a},{b}) and ({c},{d}) cross"
            )));
        }
    }
    split_faces(inner, inner_d, out)?;
    split_faces(outer, outer_d, out)
}

pub fn is_valid_dissection(d: &PolygonDissection) -> bool {
    d.is_valid()
}

impl fmt::Display for PolygonDissection {
    /// `m;(a,b),(c,d),...` with pairs in lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.m)?;
        let parts: Vec<String> = self
            .diagonals
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for PolygonDissection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::input(format!("malformed dissection {s:?}"));
        let (m, rest) = s.trim().split_once(';').ok_or_else(bad)?;
        let m: usize = m.trim().parse().map_err(|_| bad())?;
        let rest = rest.trim();
        let mut pairs = Vec::new();
        if !rest.is_empty() {
            for chunk in rest.split("),") {
                let chunk = chunk.trim().trim_start_matches('(').trim_end_matches(')');
                let (a, b) = chunk.split_once(',').ok_or_else(bad)?;
                pairs.push((
                    a.trim().parse().map_err(|_| bad())?,
                    b.trim().parse().map_err(|_| bad())?,
                ));
            }
        }
        PolygonDissection::new(m, pairs)
    }
}

/// Φ: claw-of-claws poset with `n >= 4` leaves to a dissection of the
/// `(n+1)`-gon.
pub fn poset_to_dissection(poset: &IntervalPoset) -> Result<PolygonDissection> {
    if !poset.is_claw_of_claws() {
        return Err(Error::input("poset is not a claw of claws"));
    }
    let n = poset.n();
    if n < 4 {
        return Err(Error::input(format!(
            "a claw of claws with {n} leaves has no polygon"
        )));
    }
    let root = ValueRange::new(1, n);
    PolygonDissection::new(
        n + 1,
        poset
            .internal_nodes()
            .into_iter()
            .filter(|&r| r != root)
            .map(|r| (r.lo, r.hi + 1)),
    )
}

/// Inverse of Φ: diagonal `(a, b)` becomes the node `[a, b - 1]`.
pub fn dissection_to_poset(d: &PolygonDissection) -> Result<IntervalPoset> {
    if !d.is_valid() {
        return Err(Error::input(format!("{d} is not a valid dissection")));
    }
    let n = d.m() - 1;
    let ranges = std::iter::once(ValueRange::new(1, n))
        .chain((1..=n).map(ValueRange::singleton))
        .chain(
            d.diagonals()
                .iter()
                .map(|&(a, b)| ValueRange::new(a, b - 1)),
        );
    IntervalPoset::from_ranges(n, ranges)
}

/// Every valid dissection of the `m`-gon, built face by face: the face on
/// the side `(lo, hi)` picks vertices `lo = v0 < ... < vk = hi` with
/// `k >= 4`, and each gap of width `>= 4` is closed by a diagonal and
/// dissected recursively.
pub fn enumerate_valid_dissections(m: usize, cap: usize) -> Result<Vec<PolygonDissection>> {
    check_cap(m, cap)?;
    if m < 3 {
        return Err(Error::input(format!(
            "a polygon needs 3 or more vertices, got {m}"
        )));
    }
    let mut out: Vec<PolygonDissection> = dissect(1, m)
        .into_iter()
        .map(|diags| PolygonDissection {
            m,
            diagonals: diags.into_iter().collect(),
        })
        .collect();
    out.sort();
    Ok(out)
}

pub fn count_valid_dissections(m: usize, cap: usize) -> Result<usize> {
    enumerate_valid_dissections(m, cap).map(|v| v.len())
}

/// Diagonal sets dissecting the sub-polygon `lo..=hi` whose side `(lo, hi)`
/// is already present.
fn dissect(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    if hi - lo + 1 < 5 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut face = vec![lo];
    choose_face(hi, &mut face, &mut out);
    out
}

fn choose_face(hi: usize, face: &mut Vec<usize>, out: &mut Vec<Vec<(usize, usize)>>) {
    let last = *face.last().unwrap();
    if last == hi {
        if face.len() >= 5 {
            let mut partial = vec![Vec::new()];
            for pair in face.windows(2) {
                let (a, b) = (pair[0], pair[1]);
                if b - a == 1 {
                    continue;
                }
                let inner = dissect(a, b);
                let mut next = Vec::new();
                for base in &partial {
                    let mut with_diag = base.clone();
                    with_diag.push((a, b));
                    for sub in &inner {
                        let mut d = with_diag.clone();
                        d.extend(sub.iter().copied());
                        next.push(d);
                    }
                }
                partial = next;
            }
            out.extend(partial);
        }
        return;
    }
    for next in last + 1..=hi {
        let gap = next - last;
        if gap == 1 || gap >= 4 {
            face.push(next);
            choose_face(hi, face, out);
            face.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use crate::poset::{blockwise_posets, build_interval_poset};

    fn d(m: usize, diags: &[(usize, usize)]) -> PolygonDissection {
        PolygonDissection::new(m, diags.iter().copied()).unwrap()
    }

    fn poset_of(s: &str) -> IntervalPoset {
        build_interval_poset(&s.parse::<Permutation>().unwrap())
    }

    #[test]
    fn phi_examples() {
        assert_eq!(poset_to_dissection(&poset_of("2413")).unwrap(), d(5, &[]));
        assert_eq!(
            poset_to_dissection(&poset_of("4253716")).unwrap(),
            d(8, &[(2, 6)])
        );
        assert!(poset_to_dissection(&poset_of("5123647")).is_err());
        assert!(poset_to_dissection(&poset_of("1")).is_err());
    }

    #[test]
    fn phi_on_the_worked_eighteen_gon() {
        // root [1,17] with children [1,10], {11}, [12,15], {16}, {17}
        let ranges = [(1, 17), (1, 10), (12, 15), (1, 4), (5, 8)]
            .into_iter()
            .map(|(a, b)| ValueRange::new(a, b))
            .chain((1..=17).map(ValueRange::singleton));
        let poset = IntervalPoset::from_ranges(17, ranges).unwrap();
        assert!(poset.is_claw_of_claws());
        let diss = poset_to_dissection(&poset).unwrap();
        assert_eq!(diss.m(), 18);
        assert!(diss.diagonals().contains(&(1, 11)));
        assert!(diss.diagonals().contains(&(12, 16)));
        assert!(diss.is_valid());
        let faces = diss.faces().unwrap();
        assert!(faces.contains(&vec![1, 11, 12, 16, 17, 18]));
        assert!(faces.contains(&vec![12, 13, 14, 15, 16]));
    }

    #[test]
    fn inverse_examples() {
        let claw = dissection_to_poset(&d(5, &[])).unwrap();
        assert!(claw.is_claw());
        assert_eq!(
            dissection_to_poset(&d(8, &[(2, 6)])).unwrap(),
            poset_of("4253716")
        );
        let q = dissection_to_poset(&d(8, &[(1, 5)])).unwrap();
        assert_eq!(q.signature().unwrap().0, "((••••)•••)");
        assert!(dissection_to_poset(&d(8, &[(1, 4)])).is_err());
    }

    #[test]
    fn validity_examples() {
        assert!(d(8, &[(1, 5)]).is_valid());
        assert!(!d(8, &[(1, 4)]).is_valid());
        assert!(!d(6, &[(1, 3), (3, 5)]).is_valid());
        assert!(!d(10, &[(1, 6), (3, 8)]).is_valid());
        assert!(d(10, &[(1, 6), (3, 8)]).faces().is_err());
        assert!(PolygonDissection::new(6, [(1, 6)]).is_err());
        assert!(PolygonDissection::new(6, [(2, 3)]).is_err());
        assert!(PolygonDissection::new(6, [(2, 7)]).is_err());
    }

    #[test]
    fn text_form() {
        let x = d(11, &[(5, 10), (1, 5)]);
        assert_eq!(x.to_string(), "11;(1,5),(5,10)");
        assert_eq!(x.to_string().parse::<PolygonDissection>().unwrap(), x);
        assert_eq!("5;".parse::<PolygonDissection>().unwrap(), d(5, &[]));
        assert!("5".parse::<PolygonDissection>().is_err());
        assert!("8;(1,x)".parse::<PolygonDissection>().is_err());
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (5..=14)
            .map(|m| count_valid_dissections(m, DISSECTION_CAP).unwrap())
            .collect();
        assert_eq!(counts, [1, 1, 1, 5, 10, 16, 45, 109, 222, 540]);
        assert_eq!(count_valid_dissections(4, DISSECTION_CAP).unwrap(), 0);
        assert!(count_valid_dissections(15, DISSECTION_CAP).is_err());
        for m in 5..=12 {
            for x in enumerate_valid_dissections(m, DISSECTION_CAP).unwrap() {
                assert!(x.is_valid(), "{x}");
            }
        }
    }

    #[test]
    fn bijection_small() {
        for n in 4..=8 {
            let posets = blockwise_posets(n, 10).unwrap();
            let image: BTreeSet<PolygonDissection> = posets
                .iter()
                .map(|(_, q)| poset_to_dissection(q).unwrap())
                .collect();
            assert_eq!(image.len(), posets.len());
            let all: BTreeSet<_> = enumerate_valid_dissections(n + 1, DISSECTION_CAP)
                .unwrap()
                .into_iter()
                .collect();
            assert_eq!(image, all);
            for (_, q) in &posets {
                let back = dissection_to_poset(&poset_to_dissection(q).unwrap()).unwrap();
                assert_eq!(&back, q);
            }
        }
    }
}
