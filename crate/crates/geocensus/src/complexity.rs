//! The approximations `c_0..c_9`: manifold descriptors, full profiles, the
//! h-function, `c_1` of marked `T x I` and solid tori, and graph-manifold
//! upper bounds.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::chainlink::{self, FillingTriple, GraphDescription};
use crate::error::{Error, Result};
use crate::farey::{dist_slope_theta, dist_theta_theta, pq_complexity, Marking, Slope, ThetaGraph, TreeDistance};
use crate::gl2::{conj_class_key, conj_norm, norm, Gl2};
use crate::parse::Cursor;
use crate::seifert::{MStarKind, SeifertManifold};

/// A value of some `c_n`: a natural number or `+inf`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum CValue {
    Finite(u64),
    Infinite,
}

impl CValue {
    pub fn finite(&self) -> Option<u64> {
        match self {
            CValue::Finite(v) => Some(*v),
            CValue::Infinite => None,
        }
    }
}

impl fmt::Display for CValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CValue::Finite(v) => write!(f, "{v}"),
            CValue::Infinite => f.write_str("inf"),
        }
    }
}

/// How a profile entry is known.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Exactness {
    Exact,
    UpperBound,
    /// Exact provided the known repetitions among chain-link fillings are complete.
    ConjectureConditional,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exactness::Exact => "exact",
            Exactness::UpperBound => "upper",
            Exactness::ConjectureConditional => "conj",
        })
    }
}

/// `(c_0, ..., c_9)` with a tag per entry.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplexityProfile {
    pub values: [CValue; 10],
    pub tags: [Exactness; 10],
}

impl ComplexityProfile {
    fn exact(values: [CValue; 10]) -> ComplexityProfile {
        ComplexityProfile { values, tags: [Exactness::Exact; 10] }
    }

    pub fn c(&self, n: usize) -> CValue {
        self.values[n]
    }

    /// `c_9`, the best available estimate of `c`.
    pub fn c9(&self) -> CValue {
        self.values[9]
    }

    pub fn is_non_increasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] >= w[1])
    }

    /// `c_1 = c_2` and `c_3 = ... = c_7`.
    pub fn has_plateaus(&self) -> bool {
        self.values[1] == self.values[2] && self.values[3..=7].iter().all(|v| *v == self.values[3])
    }
}

impl fmt::Display for ComplexityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(|x| x.to_string()).collect();
        let t: Vec<String> = self.tags.iter().map(|x| x.to_string()).collect();
        write!(f, "c0..c9 = [{}] tags = [{}]", v.join(","), t.join(","))
    }
}

/// The three closed manifolds of complexity zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Exceptional {
    S3,
    RP3,
    L31,
}

/// A closed manifold in one of the supported classes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ManifoldDescriptor {
    Exceptional(Exceptional),
    /// `L_{p,q}` with `p >= 4` and `q` the least of `q, p-q, q^-1, p-q^-1`.
    Lens { p: i64, q: i64 },
    /// Monodromy in canonical class-representative form.
    TorusBundle(Gl2),
    /// Unoriented canonical form of a genuine Seifert manifold.
    Seifert(SeifertManifold),
    ChainFilling(FillingTriple),
}

impl ManifoldDescriptor {
    /// `L_{p,q}`, routing `p <= 3` to the exceptional cases.
    pub fn lens(p: i64, q: i64) -> Result<ManifoldDescriptor> {
        let p = p.abs();
        if p == 0 {
            return Err(Error::Reducible("S2xS1".into()));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::NotCoprime(p, q));
        }
        match p {
            1 => return Ok(ManifoldDescriptor::Exceptional(Exceptional::S3)),
            2 => return Ok(ManifoldDescriptor::Exceptional(Exceptional::RP3)),
            3 => return Ok(ManifoldDescriptor::Exceptional(Exceptional::L31)),
            _ => {}
        }
        let q = q.rem_euclid(p);
        let inv = q.extended_gcd(&p).x.rem_euclid(p);
        let q = [q, p - q, inv, p - inv].into_iter().min().unwrap();
        Ok(ManifoldDescriptor::Lens { p, q })
    }

    /// `T_A`, stored as the representative of the class of `A`.
    pub fn torus_bundle(a: Gl2) -> Result<ManifoldDescriptor> {
        let a = Gl2::new(a.a, a.b, a.c, a.d)?;
        Ok(ManifoldDescriptor::TorusBundle(conj_class_key(&a)?.representative()))
    }

    /// A Seifert manifold, replaced by its coincident description when one exists.
    pub fn seifert(m: SeifertManifold) -> Result<ManifoldDescriptor> {
        match m.coincidence()? {
            Some(d) => Ok(d),
            None => Ok(ManifoldDescriptor::Seifert(m.canonical())),
        }
    }

    pub fn chain(t: FillingTriple) -> ManifoldDescriptor {
        ManifoldDescriptor::ChainFilling(t)
    }

    pub(crate) fn parse_from(c: &mut Cursor) -> Result<ManifoldDescriptor> {
        if c.eat_word("s3") {
            return Ok(ManifoldDescriptor::Exceptional(Exceptional::S3));
        }
        if c.eat_word("rp3") {
            return Ok(ManifoldDescriptor::Exceptional(Exceptional::RP3));
        }
        if c.eat_word("lens") {
            c.expect('(')?;
            let p = c.int()?;
            c.expect(',')?;
            let q = c.int()?;
            c.expect(')')?;
            return ManifoldDescriptor::lens(p, q);
        }
        if c.eat_word("sfs") {
            return ManifoldDescriptor::seifert(SeifertManifold::parse_from(c)?);
        }
        if c.eat_word("tb") {
            return ManifoldDescriptor::torus_bundle(Gl2::parse_from(c)?);
        }
        if c.eat_word("chain") {
            return Ok(ManifoldDescriptor::chain(FillingTriple::parse_from(c)?));
        }
        c.err("expected s3, rp3, lens, sfs, tb or chain")
    }
}

impl fmt::Display for ManifoldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldDescriptor::Exceptional(Exceptional::S3) => f.write_str("s3"),
            ManifoldDescriptor::Exceptional(Exceptional::RP3) => f.write_str("rp3"),
            ManifoldDescriptor::Exceptional(Exceptional::L31) => f.write_str("lens(3,1)"),
            ManifoldDescriptor::Lens { p, q } => write!(f, "lens({p},{q})"),
            ManifoldDescriptor::TorusBundle(a) => write!(f, "tb{a}"),
            ManifoldDescriptor::Seifert(m) => m.fmt(f),
            ManifoldDescriptor::ChainFilling(t) => t.fmt(f),
        }
    }
}

impl FromStr for ManifoldDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<ManifoldDescriptor> {
        let mut c = Cursor::new(s);
        let v = ManifoldDescriptor::parse_from(&mut c)?;
        c.end()?;
        Ok(v)
    }
}

fn fin(v: u64) -> CValue {
    CValue::Finite(v)
}

fn build(f: impl Fn(usize) -> CValue) -> [CValue; 10] {
    std::array::from_fn(f)
}

/// Full profile of a descriptor.
pub fn profile(m: &ManifoldDescriptor) -> Result<ComplexityProfile> {
    profile_with_cap(m, chainlink::DEFAULT_ORBIT_CAP)
}

/// Like [`profile`], with an explicit orbit height cap for chain fillings.
pub fn profile_with_cap(m: &ManifoldDescriptor, cap: i64) -> Result<ComplexityProfile> {
    match m {
        ManifoldDescriptor::Exceptional(_) => Ok(ComplexityProfile::exact([fin(0); 10])),
        ManifoldDescriptor::Lens { p, q } => Ok(ComplexityProfile::exact(c_lens(*p, *q)?)),
        ManifoldDescriptor::TorusBundle(a) => Ok(ComplexityProfile::exact(c_torus_bundle(a)?)),
        ManifoldDescriptor::Seifert(s) => {
            if s.mstar_info().is_some() {
                c_mstar(s)
            } else {
                Ok(ComplexityProfile::exact(c_seifert(s)?))
            }
        }
        ManifoldDescriptor::ChainFilling(t) => {
            if !chainlink::is_hyperbolic(t) {
                return Err(Error::NotHyperbolic(t.to_string()));
            }
            let orbit = chainlink::orbit(t, cap)?;
            let c9 = orbit.iter().map(h_function).collect::<Result<Vec<_>>>()?.into_iter().min().unwrap();
            let c8 = orbit
                .iter()
                .filter_map(|u| m221_third(u))
                .map(c8_m221)
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .min()
                .map_or(CValue::Infinite, fin);
            let mut values = [CValue::Infinite; 10];
            values[8] = c8;
            values[9] = fin(c9);
            let mut tags = [Exactness::Exact; 10];
            tags[8] = Exactness::ConjectureConditional;
            tags[9] = Exactness::ConjectureConditional;
            Ok(ComplexityProfile { values, tags })
        }
    }
}

/// The third slope of a triple containing `1` and `-4`.
fn m221_third(t: &FillingTriple) -> Option<Slope> {
    let mut rest = t.coeffs().to_vec();
    for s in [Slope::integer(1), Slope::integer(-4)] {
        let i = rest.iter().position(|x| *x == s)?;
        rest.remove(i);
    }
    Some(rest[0])
}

/// `c_0 = inf`, `c_n = |p,q| - 2` for an honest lens space.
pub fn c_lens(p: i64, q: i64) -> Result<[CValue; 10]> {
    let pq = pq_complexity(p, q)?;
    if p.abs() <= 3 {
        return Err(Error::Unsupported(format!("lens({p},{q}) is exceptional")));
    }
    Ok(build(|n| if n == 0 { CValue::Infinite } else { fin(pq - 2) }))
}

/// `c_n(T_A)`: `max(||A||+5, 6)` for `n >= 1`, `c_0 = 6` iff `||A|| <= 1`.
pub fn c_torus_bundle(a: &Gl2) -> Result<[CValue; 10]> {
    if a.det() != 1 {
        return Err(if a.det() == -1 { Error::NotMonodromy } else { Error::Determinant(a.det()) });
    }
    let k = conj_norm(a)?;
    let c = (k + 5).max(6);
    Ok(build(|n| if n == 0 && k > 1 { CValue::Infinite } else { fin(c) }))
}

/// Generic Seifert value in the `-6(chi-1)` form.
pub fn seifert_formula(m: &SeifertManifold) -> u64 {
    let chi = m.base().chi();
    let fibres: i64 = m.fibres().iter().map(|&(p, q)| pq_complexity(p, q).unwrap() as i64 + 2).sum();
    ((m.t() - 1 + chi).max(0) - 6 * (chi - 1) + fibres) as u64
}

/// Generic Seifert value in the `+6(1-chi)` form.
pub fn seifert_formula_c3(m: &SeifertManifold) -> u64 {
    let chi = m.base().chi();
    let mut total = 6 * (1 - chi);
    total += (m.t() - 1 + chi).max(0);
    for &(p, q) in m.fibres() {
        total += pq_complexity(p, q).unwrap() as i64 + 2;
    }
    total as u64
}

/// `(S2,(2,1),(3,1),(p,q),-1)` with `p/q > 5` not an integer.
fn special_family(m: &SeifertManifold) -> Option<(i64, i64)> {
    let f = m.fibres();
    let s2 = m.base().chi() == 2;
    if s2 && m.t() == -1 && f.len() == 3 && f[0] == (2, 1) && f[1] == (3, 1) {
        let (p, q) = f[2];
        if q >= 2 && p > 5 * q {
            return Some((p, q));
        }
    }
    None
}

/// Profile of a genuine Seifert manifold outside M*.
pub fn c_seifert(m: &SeifertManifold) -> Result<[CValue; 10]> {
    let m = m.canonical();
    if m.mstar_info().is_some() {
        return Err(Error::MStarMember);
    }
    if m.coincidence()?.is_some() {
        return Err(Error::NotGenuine(m.to_string()));
    }
    if let Some((p, q)) = special_family(&m) {
        let pq = pq_complexity(p, q)?;
        return Ok(build(|n| match n {
            0..=2 => CValue::Infinite,
            3..=7 => fin(pq + 3),
            _ => fin(pq + 2),
        }));
    }
    let c = seifert_formula(&m);
    Ok(build(|n| if n <= 2 { CValue::Infinite } else { fin(c) }))
}

/// Profile of a member of M*.
pub fn c_mstar(m: &SeifertManifold) -> Result<ComplexityProfile> {
    let info = m.mstar_info().ok_or(Error::NotMStar)?;
    let cs = info.c_star as u64;
    let (c3, c8) = match info.kind {
        MStarKind::C { i, j } => (1 + (i + j) as u64, 1 + (i + j) as u64),
        MStarKind::E { k } => (7 + k as u64, 6 + k as u64),
    };
    let generic = |n: usize| match n {
        0..=2 => CValue::Infinite,
        3..=7 => fin(c3),
        _ => fin(c8),
    };
    let values = build(|n| if cs <= 9 && n as u64 >= cs { fin(cs) } else { generic(n) });
    Ok(ComplexityProfile::exact(values))
}

/// `|x+2y, y|` for `x/y`.
fn h_term(s: Slope) -> Result<u64> {
    pq_complexity(s.p() + 2 * s.q(), s.q())
}

/// The constant `g` of the h-function.
fn h_constant(c: [Slope; 3]) -> u64 {
    let one = Slope::integer(1);
    if c.iter().all(|s| *s != one && s.greater_than(-2, 1)) {
        return 6;
    }
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
        if c[i] == one && (c[j] == Slope::integer(-4) || c[j] == Slope::integer(-5)) {
            if c[k].less_than(-1, 1) {
                return 4;
            }
            if c[k].greater_than(-1, 1) {
                return 2;
            }
        }
    }
    5
}

/// `h(p/q, r/s, t/u)`.
pub fn h_function(t: &FillingTriple) -> Result<u64> {
    let c = t.coeffs();
    if c.iter().any(|s| s.is_infinite()) {
        return Err(Error::InfiniteCoefficient(t.to_string()));
    }
    let mut total = h_constant(c);
    for s in c {
        total += h_term(s)?;
    }
    Ok(total)
}

/// `c_9` of a hyperbolic filling: least `h` over its orbit.
pub fn c9_hyperbolic(t: &FillingTriple, cap: i64) -> Result<u64> {
    if !chainlink::is_hyperbolic(t) {
        return Err(Error::NotHyperbolic(t.to_string()));
    }
    let orbit = chainlink::orbit(t, cap)?;
    Ok(orbit.iter().map(h_function).collect::<Result<Vec<_>>>()?.into_iter().min().unwrap())
}

/// `c_8` of the `s` filling of `M2_2^1`: least `7 + |p,-q|` over `{s, 1/s}`.
pub fn c8_m221(s: Slope) -> Result<u64> {
    if chainlink::m221_exceptional(s) {
        return Err(Error::ExceptionalSlope(s.to_string()));
    }
    let a = pq_complexity(s.p(), -s.q())?;
    let b = pq_complexity(s.q(), -s.p())?;
    Ok(7 + a.min(b))
}

/// `c_1` of `T x I` marked by `theta0` and `theta1`.
pub fn c1_t_times_i(theta0: &ThetaGraph, theta1: &ThetaGraph) -> u64 {
    dist_theta_theta(theta0, theta1)
}

/// The theta-graph of the brick `B_2`.
pub fn b2_theta() -> ThetaGraph {
    ThetaGraph::new(Slope::integer(0), Slope::canonical(1, 2), Slope::integer(1)).unwrap()
}

fn parabolic(n: i64) -> [[i64; 2]; 2] {
    [[1, n], [0, 1]]
}

/// Translates of `B_2`'s theta-graph near the slopes in `vertices`.
fn b2_translates(vertices: &[Slope]) -> impl Iterator<Item = ThetaGraph> {
    let finite: Vec<i64> = vertices.iter().filter(|s| !s.is_infinite()).map(|s| Integer::div_floor(&s.p(), &s.q())).collect();
    let lo = finite.iter().min().copied().unwrap_or(0);
    let hi = finite.iter().max().copied().unwrap_or(0);
    let b2 = b2_theta();
    (lo - 1..=hi + 1).map(move |n| b2.transform(parabolic(n)))
}

/// `c_1` of the solid torus marked by `theta` (meridian `inf`).
pub fn c1_solid_torus(theta: &ThetaGraph) -> Result<u64> {
    if theta.contains(Slope::INF) {
        return Err(Error::B1Class(theta.to_string()));
    }
    Ok(b2_translates(&theta.slopes()).map(|b| dist_theta_theta(&b, theta)).min().unwrap())
}

/// Distance from a filling slope of the solid torus to the class of `B_2`.
pub fn c1_solid_torus_slope(s: Slope) -> TreeDistance {
    b2_translates(&[s]).map(|b| dist_slope_theta(s, &b)).min().unwrap()
}

fn dist0(m: &Marking, t: &ThetaGraph) -> u64 {
    m.dist_to(t).max(0) as u64
}

/// Upper bound on `c_3` from a graph description.
pub fn graph_upper_bounds(d: &GraphDescription) -> Result<u64> {
    let t0 = ThetaGraph::theta_upper(0);
    let tm1 = ThetaGraph::theta_upper(-1);
    match d {
        GraphDescription::OneBlock { fillings } => Ok((0..3)
            .map(|k| {
                let rest: u64 = (0..3).filter(|&i| i != k).map(|i| dist0(&fillings[i], &t0)).sum();
                3 + rest + dist0(&fillings[k], &tm1)
            })
            .min()
            .unwrap()),
        GraphDescription::TwoBlocks { left, gluing, right } => {
            let ds: u64 = left.iter().chain(right.iter()).map(|m| dist0(m, &t0)).sum();
            let a = Gl2 { a: gluing.a, b: -gluing.b, c: -gluing.c, d: gluing.d };
            Ok(6 + ds + norm(&a)?)
        }
        GraphDescription::SelfGlued { filling, .. } => Ok(9 + dist0(filling, &tm1)),
        GraphDescription::TTimesI { .. } => Err(Error::Unsupported("T x I filling".into())),
    }
}

/// A non-closed brick of complexity at most 9.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Brick {
    pub name: &'static str,
    pub complexity: u64,
    pub description: &'static str,
}

/// `B_0 .. B_10`.
pub const BRICK_REGISTRY: [Brick; 11] = [
    Brick { name: "B0", complexity: 0, description: "T x I marked by isotopic theta-graphs" },
    Brick { name: "B1", complexity: 0, description: "marked solid torus" },
    Brick { name: "B2", complexity: 0, description: "marked solid torus" },
    Brick { name: "B3", complexity: 1, description: "T x I marked by theta-graphs related by a flip" },
    Brick { name: "B4", complexity: 3, description: "D2 x S1 marked by theta(0), theta(0), theta(-1)" },
    Brick { name: "B5", complexity: 8, description: "marked (D,(2,1),(3,1))" },
    Brick { name: "B6", complexity: 8, description: "marked M2_2^1, the filling N(1,-4,theta(-1))" },
    Brick { name: "B7", complexity: 9, description: "marked M3_4^1" },
    Brick { name: "B8", complexity: 9, description: "marked M4_1^2" },
    Brick { name: "B9", complexity: 9, description: "marked M6_1^3" },
    Brick { name: "B10", complexity: 9, description: "marked M6_1^3" },
];
