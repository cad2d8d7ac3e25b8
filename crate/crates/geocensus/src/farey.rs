//! Slopes, theta-graphs and distances in the tree dual to the Farey tessellation.
//!
//! Every slope is stored with canonical sign (`q > 0`, or `p/q = 1/0`), so the
//! vectors `(p,q)` all lie in the half-open upper half-plane and the sign of
//! `det(a,b)` is a total order compatible with the circular order of the
//! boundary of the hyperbolic plane.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::parse::Cursor;

/// A reduced fraction `p/q` in Q u {inf}, with `inf = 1/0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Slope {
    p: i64,
    q: i64,
}

/// Distance from a slope or theta-graph to a theta-graph; `-1` means the
/// slope is a vertex of the theta-graph.
pub type TreeDistance = i64;

impl Slope {
    pub const INF: Slope = Slope { p: 1, q: 0 };

    /// Builds `p/q`, rejecting non-coprime pairs and `(0,0)`.
    pub fn new(p: i64, q: i64) -> Result<Slope> {
        if p == 0 && q == 0 {
            return Err(Error::ZeroPair);
        }
        if p.gcd(&q) != 1 {
            return Err(Error::NotCoprime(p, q));
        }
        Ok(Self::canonical(p, q))
    }

    pub fn integer(n: i64) -> Slope {
        Slope { p: n, q: 1 }
    }

    pub(crate) fn canonical(p: i64, q: i64) -> Slope {
        if q < 0 || (q == 0 && p < 0) {
            Slope { p: -p, q: -q }
        } else {
            Slope { p, q }
        }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }

    pub fn is_integer(&self) -> bool {
        self.q == 1
    }

    /// `max(|p|, |q|)`.
    pub fn height(&self) -> i64 {
        self.p.abs().max(self.q)
    }

    /// Image under the fractional linear map of `[[a,b],[c,d]]`, `|ad-bc| = 1`.
    pub fn transform(&self, m: [[i64; 2]; 2]) -> Slope {
        let p = m[0][0] * self.p + m[0][1] * self.q;
        let q = m[1][0] * self.p + m[1][1] * self.q;
        Self::canonical(p, q)
    }

    /// `self < value` for a finite rational `value = n/d`, `d > 0`; false for inf.
    pub fn less_than(&self, n: i64, d: i64) -> bool {
        self.q != 0 && (self.p as i128) * (d as i128) < (n as i128) * (self.q as i128)
    }

    /// `self > value` for a finite rational `value = n/d`, `d > 0`; false for inf.
    pub fn greater_than(&self, n: i64, d: i64) -> bool {
        self.q != 0 && (self.p as i128) * (d as i128) > (n as i128) * (self.q as i128)
    }

    fn add(self, o: Slope) -> Slope {
        Self::canonical(self.p + o.p, self.q + o.q)
    }

    fn sub(self, o: Slope) -> Slope {
        Self::canonical(self.p - o.p, self.q - o.q)
    }
}

/// `p_a q_b - p_b q_a`.
pub fn det(a: Slope, b: Slope) -> i128 {
    a.p as i128 * b.q as i128 - b.p as i128 * a.q as i128
}

/// Position order along the boundary circle: `a` precedes `b` iff `det(a,b) > 0`.
fn precedes(a: Slope, b: Slope) -> bool {
    det(a, b) > 0
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.q, self.p).cmp(&(other.q, other.p))
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.q {
            0 => write!(f, "inf"),
            1 => write!(f, "{}", self.p),
            _ => write!(f, "{}/{}", self.p, self.q),
        }
    }
}

impl Slope {
    pub(crate) fn parse_from(c: &mut Cursor) -> Result<Slope> {
        if c.eat_word("inf") {
            return Ok(Slope::INF);
        }
        let p = c.int()?;
        let q = if c.eat('/') { c.int()? } else { 1 };
        Slope::new(p, q)
    }
}

impl FromStr for Slope {
    type Err = Error;
    fn from_str(s: &str) -> Result<Slope> {
        let mut c = Cursor::new(s);
        let v = Slope::parse_from(&mut c)?;
        c.end()?;
        Ok(v)
    }
}

/// A Farey triangle: three slopes with pairwise `|det| = 1`, stored sorted.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ThetaGraph {
    slopes: [Slope; 3],
}

impl ThetaGraph {
    pub fn new(a: Slope, b: Slope, c: Slope) -> Result<ThetaGraph> {
        for (x, y) in [(a, b), (b, c), (a, c)] {
            if det(x, y).abs() != 1 {
                return Err(Error::InvalidTheta(format!("{{{a},{b},{c}}}")));
            }
        }
        Ok(Self::sorted(a, b, c))
    }

    fn sorted(a: Slope, b: Slope, c: Slope) -> ThetaGraph {
        let mut slopes = [a, b, c];
        slopes.sort();
        ThetaGraph { slopes }
    }

    /// The triangle `{i, i+1, inf}`.
    pub fn theta_upper(i: i64) -> ThetaGraph {
        Self::sorted(Slope::integer(i), Slope::integer(i + 1), Slope::INF)
    }

    /// The triangle `{0, 1/i, 1/(i+1)}`.
    pub fn theta_lower(i: i64) -> ThetaGraph {
        let s = |n: i64| Slope::canonical(1, n);
        Self::sorted(Slope::integer(0), s(i), s(i + 1))
    }

    pub fn slopes(&self) -> [Slope; 3] {
        self.slopes
    }

    pub fn contains(&self, s: Slope) -> bool {
        self.slopes.contains(&s)
    }

    /// Image under a matrix of determinant +-1.
    pub fn transform(&self, m: [[i64; 2]; 2]) -> ThetaGraph {
        let [a, b, c] = self.slopes;
        Self::sorted(a.transform(m), b.transform(m), c.transform(m))
    }

    /// The three edges as `(a, b, opposite)`.
    fn edges(&self) -> [(Slope, Slope, Slope); 3] {
        let [x, y, z] = self.slopes;
        [(x, y, z), (y, z, x), (x, z, y)]
    }

    /// The triangle across edge `{a,b}` from the one whose third vertex is `c`.
    fn flip_edge(a: Slope, b: Slope, c: Slope) -> ThetaGraph {
        let plus = a.add(b);
        let d = if plus == c { a.sub(b) } else { plus };
        Self::sorted(a, b, d)
    }

    pub fn flips(&self) -> [ThetaGraph; 3] {
        self.edges().map(|(a, b, c)| Self::flip_edge(a, b, c))
    }

    /// The edge of `self` that separates it from every target vertex lying
    /// strictly inside the open arc cut off by that edge.
    fn separating_edge(&self, inside: impl Fn(Slope, Slope, Slope) -> bool) -> Option<(Slope, Slope, Slope)> {
        self.edges().into_iter().find(|&(a, b, c)| inside(a, b, c))
    }
}

/// True if `x` lies strictly inside the arc from `a` to `b` not containing `c`.
fn in_open_arc(x: Slope, a: Slope, b: Slope, c: Slope) -> bool {
    let (lo, hi) = if precedes(a, b) { (a, b) } else { (b, a) };
    let between = |y: Slope| precedes(lo, y) && precedes(y, hi);
    if between(c) {
        x != lo && x != hi && !between(x)
    } else {
        between(x)
    }
}

impl fmt::Display for ThetaGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.slopes;
        write!(f, "{{{a},{b},{c}}}")
    }
}

impl ThetaGraph {
    pub(crate) fn parse_from(c: &mut Cursor) -> Result<ThetaGraph> {
        c.expect('{')?;
        let a = Slope::parse_from(c)?;
        c.expect(',')?;
        let b = Slope::parse_from(c)?;
        c.expect(',')?;
        let d = Slope::parse_from(c)?;
        c.expect('}')?;
        ThetaGraph::new(a, b, d)
    }
}

impl FromStr for ThetaGraph {
    type Err = Error;
    fn from_str(s: &str) -> Result<ThetaGraph> {
        let mut c = Cursor::new(s);
        let v = ThetaGraph::parse_from(&mut c)?;
        c.end()?;
        Ok(v)
    }
}

/// `|p,q|`, computed by summing continued-fraction quotients.
pub fn pq_complexity(p: i64, q: i64) -> Result<u64> {
    if p == 0 && q == 0 {
        return Err(Error::ZeroPair);
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    let (p, q) = if p < 0 { (-p, -q) } else { (p, q) };
    if p == 0 || q == 0 {
        return Ok(0);
    }
    if q < 0 {
        return Ok(positive_pq(p as u64, (-q) as u64) + 1);
    }
    Ok(positive_pq(p as u64, q as u64))
}

fn positive_pq(mut p: u64, mut q: u64) -> u64 {
    let mut sum = 0;
    while q != 0 {
        sum += p / q;
        (p, q) = (q, p % q);
    }
    sum - 1
}

/// Flip distance between two theta-graphs, by walking across separating edges.
pub fn dist_theta_theta(a: &ThetaGraph, b: &ThetaGraph) -> u64 {
    path_theta(a, b).len() as u64 - 1
}

/// The unique simple flip path from `a` to `b`, both endpoints included.
pub fn path_theta(a: &ThetaGraph, b: &ThetaGraph) -> Vec<ThetaGraph> {
    let mut path = vec![*a];
    let mut cur = *a;
    let target = b.slopes;
    while cur != *b {
        let (x, y, z) = cur
            .separating_edge(|x, y, z| target.iter().any(|&v| in_open_arc(v, x, y, z)))
            .expect("distinct Farey triangles are separated by an edge");
        cur = ThetaGraph::flip_edge(x, y, z);
        path.push(cur);
    }
    path
}

/// Slope to theta-graph distance: `-1` if `s` is a vertex of `t`, otherwise
/// the number of flips needed to reach a triangle containing `s`, minus one.
pub fn dist_slope_theta(s: Slope, t: &ThetaGraph) -> TreeDistance {
    if t.contains(s) {
        return -1;
    }
    let mut cur = *t;
    let mut steps = 0;
    loop {
        let (x, y, z) = cur
            .separating_edge(|x, y, z| in_open_arc(s, x, y, z))
            .expect("a slope outside a triangle lies beyond one of its edges");
        cur = ThetaGraph::flip_edge(x, y, z);
        steps += 1;
        if cur.contains(s) {
            return steps - 1;
        }
    }
}

/// All theta-graphs within flip distance `radius` of `center`.
pub fn theta_ball(center: &ThetaGraph, radius: u64) -> Vec<ThetaGraph> {
    let mut seen = HashSet::from([*center]);
    let mut out = vec![*center];
    let mut queue = VecDeque::from([(*center, 0)]);
    while let Some((t, r)) = queue.pop_front() {
        if r == radius {
            continue;
        }
        for u in t.flips() {
            if seen.insert(u) {
                out.push(u);
                queue.push_back((u, r + 1));
            }
        }
    }
    out
}

/// A boundary marking: a filling slope or a theta-graph.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Marking {
    Slope(Slope),
    Theta(ThetaGraph),
}

impl Marking {
    /// Distance to a theta-graph (`-1` possible for slopes).
    pub fn dist_to(&self, t: &ThetaGraph) -> TreeDistance {
        match self {
            Marking::Slope(s) => dist_slope_theta(*s, t),
            Marking::Theta(u) => dist_theta_theta(u, t) as i64,
        }
    }

    pub fn transform(&self, m: [[i64; 2]; 2]) -> Marking {
        match self {
            Marking::Slope(s) => Marking::Slope(s.transform(m)),
            Marking::Theta(t) => Marking::Theta(t.transform(m)),
        }
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Marking::Slope(s) => s.fmt(f),
            Marking::Theta(t) => t.fmt(f),
        }
    }
}
