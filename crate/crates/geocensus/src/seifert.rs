//! Closed Seifert fibred spaces in filling parameters
//! `(F, (p_1,q_1), ..., (p_k,q_k), t)`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;

use crate::complexity::ManifoldDescriptor;
use crate::error::{Error, Result};
use crate::gl2::Gl2;
use crate::parse::Cursor;

/// A closed surface with Euler characteristic 2, 1 or 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BaseSurface {
    pub orientable: bool,
    /// Orientable genus, or number of cross-caps.
    pub genus: u32,
}

impl BaseSurface {
    pub const SPHERE: BaseSurface = BaseSurface { orientable: true, genus: 0 };
    pub const PROJECTIVE_PLANE: BaseSurface = BaseSurface { orientable: false, genus: 1 };
    pub const TORUS: BaseSurface = BaseSurface { orientable: true, genus: 1 };
    pub const KLEIN_BOTTLE: BaseSurface = BaseSurface { orientable: false, genus: 2 };

    pub fn new(orientable: bool, genus: u32) -> Result<BaseSurface> {
        let b = BaseSurface { orientable, genus };
        if b.chi() < 0 || (!orientable && genus == 0) {
            return Err(Error::UnsupportedBase(format!("orientable={orientable}, genus={genus}")));
        }
        Ok(b)
    }

    pub fn chi(&self) -> i64 {
        if self.orientable {
            2 - 2 * self.genus as i64
        } else {
            2 - self.genus as i64
        }
    }

    pub fn name(&self) -> &'static str {
        match (self.orientable, self.genus) {
            (true, 0) => "S2",
            (false, 1) => "P2",
            (true, 1) => "T2",
            _ => "K2",
        }
    }

    pub fn all() -> [BaseSurface; 4] {
        [Self::SPHERE, Self::PROJECTIVE_PLANE, Self::TORUS, Self::KLEIN_BOTTLE]
    }
}

impl FromStr for BaseSurface {
    type Err = Error;
    fn from_str(s: &str) -> Result<BaseSurface> {
        Self::all()
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnsupportedBase(s.to_string()))
    }
}

/// Seifert parameters with `p_i > q_i > 0`, fibres sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SeifertManifold {
    base: BaseSurface,
    fibres: Vec<(i64, i64)>,
    t: i64,
}

/// Geometry tags.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Geometry {
    Elliptic,
    Flat,
    Nil,
    H2xR,
    SL2,
    Sol,
    S2xR,
    Hyperbolic,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Geometry::Elliptic => "elliptic",
            Geometry::Flat => "flat",
            Geometry::Nil => "Nil",
            Geometry::H2xR => "H2xR",
            Geometry::SL2 => "SL2",
            Geometry::Sol => "Sol",
            Geometry::S2xR => "S2xR",
            Geometry::Hyperbolic => "hyperbolic",
        };
        f.write_str(s)
    }
}

/// The two descriptions of the members of M*.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MStarKind {
    /// `(S2,(2,1),(3,1),(5+k,1),-1)`.
    E { k: u32 },
    /// `(S2,(2,1),(1+i,1),(1+j,1),-1)`.
    C { i: u32, j: u32 },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MStarInfo {
    pub kind: MStarKind,
    pub c_star: u32,
}

impl SeifertManifold {
    /// Promotes raw parameters to normalized ones describing the same oriented
    /// manifold.
    pub fn normalize(base: BaseSurface, fibres: &[(i64, i64)], t: i64) -> Result<SeifertManifold> {
        for &(p, q) in fibres {
            if p.gcd(&q) != 1 {
                return Err(Error::NotCoprime(p, q));
            }
            if p.abs() < 2 {
                return Err(Error::FibreTooSmall(p, q));
            }
        }
        Self::absorb(base, fibres, t)
    }

    /// Like `normalize`, but fibres with `|p| = 1` are absorbed into `t`.
    fn absorb(base: BaseSurface, fibres: &[(i64, i64)], mut t: i64) -> Result<SeifertManifold> {
        let mut out = Vec::with_capacity(fibres.len());
        for &(p, q) in fibres {
            if p == 0 {
                return Err(Error::Reducible(format!("fibre-parallel filling ({p},{q})")));
            }
            let ap = p.abs();
            let qs = q * p.signum();
            let qn = qs.rem_euclid(ap);
            t += (qs - qn) / ap;
            if ap > 1 {
                out.push((ap, qn));
            }
        }
        out.sort();
        Ok(SeifertManifold { base, fibres: out, t })
    }

    pub fn base(&self) -> BaseSurface {
        self.base
    }

    pub fn fibres(&self) -> &[(i64, i64)] {
        &self.fibres
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn k(&self) -> i64 {
        self.fibres.len() as i64
    }

    /// The normalized expression of `-M`.
    pub fn reverse_orientation(&self) -> SeifertManifold {
        let mut fibres: Vec<_> = self.fibres.iter().map(|&(p, q)| (p, p - q)).collect();
        fibres.sort();
        SeifertManifold { base: self.base, fibres, t: -self.t - self.k() }
    }

    /// Unoriented canonical form: `t >= -k/2`, ties broken lexicographically.
    pub fn canonical(&self) -> SeifertManifold {
        let twice = 2 * self.t + self.k();
        if twice > 0 {
            return self.clone();
        }
        let r = self.reverse_orientation();
        if twice < 0 {
            return r;
        }
        self.clone().min(r)
    }

    pub fn euler_number(&self) -> Rational64 {
        self.fibres.iter().fold(Rational64::from_integer(self.t), |e, &(p, q)| e + Rational64::new(q, p))
    }

    pub fn chi_orb(&self) -> Rational64 {
        self.fibres
            .iter()
            .fold(Rational64::from_integer(self.base.chi()), |x, &(p, _)| x - Rational64::new(p - 1, p))
    }

    /// Non-genuine expressions and the listed torus-bundle coincidences.
    pub fn coincidence(&self) -> Result<Option<ManifoldDescriptor>> {
        let m = self.canonical();
        let k = m.k();
        let fib = |v: &[(i64, i64)]| m.fibres == v;
        if m.base == BaseSurface::SPHERE {
            if k <= 2 {
                return s2_two_fibres(&m.fibres, m.t).map(Some);
            }
            let order = if k == 3 && m.t == -1 {
                if fib(&[(2, 1), (3, 1), (6, 1)]) {
                    Some(Gl2 { a: 0, b: 1, c: -1, d: 1 })
                } else if fib(&[(2, 1), (4, 1), (4, 1)]) {
                    Some(Gl2 { a: 0, b: 1, c: -1, d: 0 })
                } else if fib(&[(3, 1), (3, 1), (3, 1)]) {
                    Some(Gl2 { a: 0, b: 1, c: -1, d: -1 })
                } else {
                    None
                }
            } else if k == 4 && m.t == -2 && fib(&[(2, 1); 4]) {
                Some(Gl2 { a: -1, b: 0, c: 0, d: -1 })
            } else {
                None
            };
            return order.map(ManifoldDescriptor::torus_bundle).transpose();
        }
        if m.base == BaseSurface::PROJECTIVE_PLANE && k <= 1 {
            let (p, q) = m.fibres.first().copied().unwrap_or((1, 0));
            let s2 = Self::absorb(BaseSurface::SPHERE, &[(2, 1), (2, -1), (q + m.t * p, p)], 0)?;
            return ManifoldDescriptor::seifert(s2).map(Some);
        }
        if k == 0 && m.base == BaseSurface::TORUS {
            return ManifoldDescriptor::torus_bundle(Gl2 { a: 1, b: m.t, c: 0, d: 1 }).map(Some);
        }
        if k == 0 && m.base == BaseSurface::KLEIN_BOTTLE {
            return ManifoldDescriptor::torus_bundle(Gl2 { a: -1, b: 0, c: m.t, d: -1 }).map(Some);
        }
        Ok(None)
    }

    /// True when `k - chi(F) > 0` and no listed coincidence applies.
    pub fn is_genuine(&self) -> bool {
        matches!(self.coincidence(), Ok(None))
    }

    pub fn geometry_of(&self) -> Result<Geometry> {
        if !self.is_genuine() {
            return Err(Error::NotGenuine(self.to_string()));
        }
        let chi = self.chi_orb();
        let e_zero = self.euler_number() == Rational64::from_integer(0);
        let zero = Rational64::from_integer(0);
        Ok(match (chi.cmp(&zero), e_zero) {
            (std::cmp::Ordering::Greater, false) => Geometry::Elliptic,
            (std::cmp::Ordering::Greater, true) => Geometry::S2xR,
            (std::cmp::Ordering::Equal, true) => Geometry::Flat,
            (std::cmp::Ordering::Equal, false) => Geometry::Nil,
            (std::cmp::Ordering::Less, true) => Geometry::H2xR,
            (std::cmp::Ordering::Less, false) => Geometry::SL2,
        })
    }

    /// Membership in M* and the estimate `c*`.
    pub fn mstar_info(&self) -> Option<MStarInfo> {
        let m = self.canonical();
        if m.base != BaseSurface::SPHERE || m.t != -1 || m.fibres.len() != 3 {
            return None;
        }
        let [(a, qa), (n, qn), (mm, qm)] = [m.fibres[0], m.fibres[1], m.fibres[2]];
        if (a, qa) != (2, 1) || qn != 1 || qm != 1 || (n, mm) == (3, 6) || (n, mm) == (4, 4) {
            return None;
        }
        let (n, mm) = (n as u32, mm as u32);
        Some(if n == 3 && mm >= 5 {
            MStarInfo { kind: MStarKind::E { k: mm - 5 }, c_star: mm }
        } else {
            MStarInfo { kind: MStarKind::C { i: n - 1, j: mm - 1 }, c_star: n + mm - 2 }
        })
    }

    pub(crate) fn parse_from(c: &mut Cursor) -> Result<SeifertManifold> {
        c.expect('(')?;
        let base = ["S2", "P2", "T2", "K2"]
            .into_iter()
            .find(|w| c.eat_word(w))
            .map(|w| w.parse::<BaseSurface>())
            .unwrap_or_else(|| c.err("expected base S2|P2|T2|K2"))?;
        c.expect(';')?;
        let mut fibres = Vec::new();
        if c.peek() == Some('(') {
            loop {
                c.expect('(')?;
                let p = c.int()?;
                c.expect(',')?;
                let q = c.int()?;
                c.expect(')')?;
                fibres.push((p, q));
                if !c.eat(',') {
                    break;
                }
            }
        }
        c.expect(';')?;
        let t = c.int()?;
        c.expect(')')?;
        SeifertManifold::normalize(base, &fibres, t)
    }
}

/// `(S2,(p1,q1),(p2,q2),t)` is a lens space (or S2xS1).
fn s2_two_fibres(fibres: &[(i64, i64)], t: i64) -> Result<ManifoldDescriptor> {
    let (p1, q1) = fibres.first().copied().unwrap_or((1, 0));
    let (p2, q2) = fibres.get(1).copied().unwrap_or((1, 0));
    let q2t = q2 + t * p2;
    let order = (p1 * q2t + p2 * q1).abs();
    if order == 0 {
        return Err(Error::Reducible("S2xS1".into()));
    }
    let g = p1.extended_gcd(&q1);
    let (s, r) = (g.x * g.gcd, -g.y * g.gcd);
    ManifoldDescriptor::lens(order, (-p2 * s - q2t * r).rem_euclid(order))
}

impl fmt::Display for SeifertManifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fib: Vec<String> = self.fibres.iter().map(|(p, q)| format!("({p},{q})")).collect();
        write!(f, "sfs({};{};{})", self.base.name(), fib.join(","), self.t)
    }
}

impl FromStr for SeifertManifold {
    type Err = Error;
    fn from_str(s: &str) -> Result<SeifertManifold> {
        let mut c = Cursor::new(s);
        if !c.eat_word("sfs") {
            return c.err("expected 'sfs'");
        }
        let v = SeifertManifold::parse_from(&mut c)?;
        c.end()?;
        Ok(v)
    }
}
