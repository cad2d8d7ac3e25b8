//! Dehn fillings of the 3-chain-link exterior `N = M6_1^3`: hyperbolicity,
//! the known repetitions, homology, and the recognized non-hyperbolic fillings.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::farey::{Marking, Slope};
use crate::gl2::{smith_normal_form, Gl2};
use crate::parse::Cursor;

/// Default numerator/denominator cap for orbit exploration.
pub const DEFAULT_ORBIT_CAP: i64 = 10_000;

/// An unordered triple of filling slopes, stored sorted.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FillingTriple {
    coeffs: [Slope; 3],
}

impl FillingTriple {
    pub fn new(a: Slope, b: Slope, c: Slope) -> FillingTriple {
        let mut coeffs = [a, b, c];
        coeffs.sort();
        FillingTriple { coeffs }
    }

    pub fn coeffs(&self) -> [Slope; 3] {
        self.coeffs
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().map(|s| s.height()).max().unwrap()
    }

    pub fn markings(&self) -> [Marking; 3] {
        self.coeffs.map(Marking::Slope)
    }

    pub(crate) fn parse_from(c: &mut Cursor) -> Result<FillingTriple> {
        c.expect('(')?;
        let a = Slope::parse_from(c)?;
        c.expect(',')?;
        let b = Slope::parse_from(c)?;
        c.expect(',')?;
        let d = Slope::parse_from(c)?;
        c.expect(')')?;
        Ok(FillingTriple::new(a, b, d))
    }
}

impl fmt::Display for FillingTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.coeffs;
        write!(f, "chain({a},{b},{c})")
    }
}

impl FromStr for FillingTriple {
    type Err = Error;
    fn from_str(s: &str) -> Result<FillingTriple> {
        let mut c = Cursor::new(s);
        if !c.eat_word("chain") {
            return c.err("expected 'chain'");
        }
        let v = FillingTriple::parse_from(&mut c)?;
        c.end()?;
        Ok(v)
    }
}

fn sl(p: i64, q: i64) -> Slope {
    Slope::canonical(p, q)
}

fn is_pair(a: Slope, b: Slope, x: Slope, y: Slope) -> bool {
    (a == x && b == y) || (a == y && b == x)
}

/// The 14 exceptional triples.
fn exceptional_triples() -> Vec<FillingTriple> {
    let t = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| FillingTriple::new(sl(a.0, a.1), sl(b.0, b.1), sl(c.0, c.1));
    vec![
        t((-5, 1), (-5, 1), (-1, 2)),
        t((-4, 1), (-4, 1), (-2, 3)),
        t((-4, 1), (-3, 2), (-3, 2)),
        t((-4, 1), (-1, 3), (1, 1)),
        t((-8, 3), (-3, 2), (-3, 2)),
        t((-5, 2), (-5, 2), (-4, 3)),
        t((-5, 2), (-5, 3), (-5, 3)),
        t((-7, 3), (-7, 3), (-3, 2)),
        t((1, 1), (2, 1), (2, 1)),
        t((1, 1), (2, 1), (3, 1)),
        t((1, 1), (2, 1), (4, 1)),
        t((1, 1), (2, 1), (5, 1)),
        t((1, 1), (3, 1), (3, 1)),
        t((2, 1), (2, 1), (2, 1)),
    ]
}

/// Hyperbolicity of a closed filling.
pub fn is_hyperbolic(t: &FillingTriple) -> bool {
    let c = t.coeffs;
    let bad_single = [Slope::INF, sl(-3, 1), sl(-2, 1), sl(-1, 1), sl(0, 1)];
    if c.iter().any(|s| bad_single.contains(s)) {
        return false;
    }
    let bad_pairs = [(sl(1, 1), sl(1, 1)), (sl(-4, 1), sl(-1, 2)), (sl(-3, 2), sl(-5, 2))];
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if bad_pairs.iter().any(|&(x, y)| is_pair(c[i], c[j], x, y)) {
            return false;
        }
    }
    !exceptional_triples().contains(t)
}

/// Non-hyperbolic slopes of `M2_2^1`.
pub fn m221_exceptional(s: Slope) -> bool {
    [Slope::INF, sl(-3, 1), sl(-2, 1), sl(-1, 1), sl(-1, 2), sl(-1, 3), sl(0, 1), sl(1, 1)].contains(&s)
}

type Mobius = [[i64; 2]; 2];

const REL1_X: Mobius = [[-1, -1], [1, 2]];
const REL1_X_INV: Mobius = [[-2, -1], [1, 1]];
const REL1_Y: Mobius = [[-1, -3], [0, 1]];
const REL2: Mobius = [[-2, -5], [1, 2]];
const REL3_X: Mobius = [[-1, -3], [1, 2]];
const REL3_Y: Mobius = [[-2, -3], [1, 1]];
const REL4: Mobius = [[-1, -4], [0, 1]];
const REL5: Mobius = [[-1, 2], [0, 1]];
const REL6: Mobius = [[0, 1], [1, 0]];

/// Triples one relation step away from `t`, in both directions.
pub fn relation_neighbours(t: &FillingTriple) -> Vec<FillingTriple> {
    let c = t.coeffs;
    let mut out = Vec::new();
    for i in 0..3 {
        let f = c[i];
        for (j, k) in [((i + 1) % 3, (i + 2) % 3), ((i + 2) % 3, (i + 1) % 3)] {
            let (x, y) = (c[j], c[k]);
            if f == sl(-3, 2) {
                out.push(FillingTriple::new(sl(-4, 1), x.transform(REL1_X), y.transform(REL1_Y)));
                out.push(FillingTriple::new(f, x.transform(REL2), y.transform(REL2)));
            }
            if f == sl(-4, 1) {
                out.push(FillingTriple::new(sl(-3, 2), x.transform(REL1_X_INV), y.transform(REL1_Y)));
            }
            if f == sl(-5, 2) {
                out.push(FillingTriple::new(f, x.transform(REL3_X), y.transform(REL3_Y)));
            }
            if f == sl(-1, 2) {
                out.push(FillingTriple::new(f, x.transform(REL4), y.transform(REL4)));
            }
            if f == sl(1, 1) && x == sl(2, 1) {
                out.push(FillingTriple::new(f, x, y.transform(REL5)));
            }
            if f == sl(1, 1) && x == sl(-4, 1) {
                out.push(FillingTriple::new(f, x, y.transform(REL6)));
            }
        }
    }
    out.sort();
    out.dedup();
    out.retain(|u| u != t);
    out
}

/// Breadth-first orbit under the repetitions, sorted. Errors if some triple
/// in the orbit has a numerator or denominator above `cap`.
pub fn orbit(t: &FillingTriple, cap: i64) -> Result<Vec<FillingTriple>> {
    let mut seen = BTreeSet::from([*t]);
    let mut queue = VecDeque::from([*t]);
    let mut capped = false;
    while let Some(u) = queue.pop_front() {
        for v in relation_neighbours(&u) {
            if v.height() > cap {
                capped = true;
                continue;
            }
            if seen.insert(v) {
                queue.push_back(v);
            }
        }
    }
    if capped {
        return Err(Error::OrbitCapped { cap, partial: seen.iter().map(|u| u.to_string()).collect() });
    }
    Ok(seen.into_iter().collect())
}

/// Least triple in the orbit of `t`.
pub fn canonical_triple(t: &FillingTriple, cap: i64) -> Result<FillingTriple> {
    if !is_hyperbolic(t) {
        return Err(Error::NotHyperbolic(t.to_string()));
    }
    Ok(orbit(t, cap)?[0])
}

/// Torsion coefficients above 1 and free rank of `H_1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HomologyGroup {
    pub torsion: Vec<u64>,
    pub rank: u32,
}

impl HomologyGroup {
    /// `|H_1|`, or `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = vec!["Z".to_string(); self.rank as usize];
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

/// `H_1` from the relation matrix with row `i` equal to `p_i mu_i + q_i (mu_j + mu_k)`.
pub fn homology(t: &FillingTriple) -> HomologyGroup {
    let c = t.coeffs;
    let mut m = [[0i64; 3]; 3];
    for i in 0..3 {
        for (j, e) in m[i].iter_mut().enumerate() {
            *e = if i == j { c[i].p() } else { c[i].q() };
        }
    }
    let diag = smith_normal_form(m);
    HomologyGroup {
        torsion: diag.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect(),
        rank: diag.iter().filter(|&&d| d == 0).count() as u32,
    }
}

/// Graph-manifold descriptions of the recognized non-hyperbolic fillings.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GraphDescription {
    /// `(D_1 x S^1)` with markings on its two boundary tori.
    TTimesI { a: Marking, b: Marking },
    /// `(D_2 x S^1)` with three boundary markings.
    OneBlock { fillings: [Marking; 3] },
    /// Two `(D_2 x S^1)` blocks glued along their free boundary tori.
    TwoBlocks { left: [Marking; 2], gluing: Gl2, right: [Marking; 2] },
    /// One `(D_2 x S^1)` block with two boundary tori glued together.
    SelfGlued { filling: Marking, gluing: Gl2 },
}

/// Right-hand side of the recognized homeomorphisms, for fillings that may
/// include theta-graph markings.
pub fn nonhyperbolic_identity(m: &[Marking; 3]) -> Result<GraphDescription> {
    let slot = |s: Slope| m.iter().position(|x| *x == Marking::Slope(s));
    let rest = |i: usize| {
        let mut o = m.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| *x);
        (o.next().unwrap(), o.next().unwrap())
    };
    let two = Marking::Slope(sl(2, 1));
    if let Some(i) = slot(Slope::INF) {
        let (a, b) = rest(i);
        return Ok(GraphDescription::TTimesI { a, b: b.transform([[0, -1], [1, 0]]) });
    }
    if let Some(i) = slot(sl(-3, 1)) {
        let (a, b) = rest(i);
        let f = [[1, 1], [1, 2]];
        return Ok(GraphDescription::TwoBlocks {
            left: [two, a.transform(f)],
            gluing: Gl2 { a: 1, b: 1, c: 0, d: -1 },
            right: [two, b.transform(f)],
        });
    }
    if let Some(i) = slot(sl(-2, 1)) {
        let (a, b) = rest(i);
        let f = [[-1, -2], [0, 1]];
        return Ok(GraphDescription::OneBlock {
            fillings: [Marking::Slope(sl(3, 2)), a.transform(f), b.transform(f)],
        });
    }
    if let Some(i) = slot(sl(-1, 1)) {
        let (a, b) = rest(i);
        let f = [[-1, -3], [0, 1]];
        return Ok(GraphDescription::OneBlock { fillings: [two, a.transform(f), b.transform(f)] });
    }
    if let Some(i) = slot(sl(0, 1)) {
        let (a, b) = rest(i);
        let f = [[0, 1], [1, 2]];
        return Ok(GraphDescription::TwoBlocks {
            left: [a.transform(f), b.transform(f)],
            gluing: Gl2 { a: 0, b: -1, c: 1, d: 1 },
            right: [two, Marking::Slope(sl(3, 1))],
        });
    }
    let one = Marking::Slope(sl(1, 1));
    if m.iter().filter(|x| **x == one).count() >= 2 {
        let i = m.iter().position(|x| *x == one).unwrap();
        let (a, b) = rest(i);
        let other = if a == one { b } else { a };
        return Ok(GraphDescription::SelfGlued {
            filling: other.transform([[0, -1], [1, 2]]),
            gluing: Gl2 { a: 1, b: -1, c: -1, d: 0 },
        });
    }
    let txt: Vec<String> = m.iter().map(|x| x.to_string()).collect();
    Err(Error::NoPattern(txt.join(",")))
}
