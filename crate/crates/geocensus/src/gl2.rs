//! GL2(Z): the S/J decomposition, the norms |A| and ||A||, conjugacy keys for
//! torus-bundle monodromies, and 3x3 Smith normal form.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::farey::{dist_theta_theta, path_theta, theta_ball, ThetaGraph};
use crate::parse::Cursor;

/// A 2x2 integer matrix `[[a,b],[c,d]]` with determinant +-1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Gl2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

pub const S1: Gl2 = Gl2 { a: 1, b: -1, c: 0, d: -1 };
pub const S2: Gl2 = Gl2 { a: -1, b: 0, c: -1, d: 1 };
pub const S3: Gl2 = Gl2 { a: 0, b: 1, c: 1, d: 0 };
pub const J: Gl2 = Gl2 { a: -1, b: 0, c: 0, d: 1 };
pub const R: Gl2 = Gl2 { a: 1, b: 1, c: 0, d: 1 };
pub const L: Gl2 = Gl2 { a: 1, b: 0, c: 1, d: 1 };
pub const IDENTITY: Gl2 = Gl2 { a: 1, b: 0, c: 0, d: 1 };

impl Gl2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Gl2> {
        let det = a * d - b * c;
        if det.abs() != 1 {
            return Err(Error::Determinant(det));
        }
        Ok(Gl2 { a, b, c, d })
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    pub fn mul(&self, o: &Gl2) -> Gl2 {
        Gl2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Gl2 {
        let e = self.det();
        Gl2 { a: e * self.d, b: -e * self.b, c: -e * self.c, d: e * self.a }
    }

    pub fn neg(&self) -> Gl2 {
        Gl2 { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    pub fn scale(&self, s: i64) -> Gl2 {
        Gl2 { a: s * self.a, b: s * self.b, c: s * self.c, d: s * self.d }
    }

    pub fn conjugate_by(&self, b: &Gl2) -> Gl2 {
        b.mul(self).mul(&b.inverse())
    }

    pub fn as_array(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn apply_theta(&self, t: &ThetaGraph) -> ThetaGraph {
        t.transform(self.as_array())
    }

    pub fn max_entry(&self) -> i64 {
        [self.a, self.b, self.c, self.d].iter().map(|x| x.abs()).max().unwrap()
    }

    pub(crate) fn parse_from(c: &mut Cursor) -> Result<Gl2> {
        c.expect('[')?;
        c.expect('[')?;
        let a = c.int()?;
        c.expect(',')?;
        let b = c.int()?;
        c.expect(']')?;
        c.expect(',')?;
        c.expect('[')?;
        let cc = c.int()?;
        c.expect(',')?;
        let d = c.int()?;
        c.expect(']')?;
        c.expect(']')?;
        Gl2::new(a, b, cc, d)
    }
}

impl fmt::Display for Gl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for Gl2 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Gl2> {
        let mut c = Cursor::new(s);
        let v = Gl2::parse_from(&mut c)?;
        c.end()?;
        Ok(v)
    }
}

fn generator(i: u8) -> Gl2 {
    match i {
        1 => S1,
        2 => S2,
        _ => S3,
    }
}

/// `A = eps * S_{i0} J S_{i1} J ... J S_{in} * S1^m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    pub epsilon: i8,
    pub indices: Vec<u8>,
    pub m: u8,
}

impl Decomposition {
    pub fn reconstruct(&self) -> Gl2 {
        let mut out = IDENTITY.scale(self.epsilon as i64);
        for (k, &i) in self.indices.iter().enumerate() {
            if k > 0 {
                out = out.mul(&J);
            }
            out = out.mul(&generator(i));
        }
        if self.m == 1 {
            out = out.mul(&S1);
        }
        out
    }

    /// Number of `J` factors.
    pub fn j_count(&self) -> u64 {
        self.indices.len() as u64 - 1
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.epsilon > 0 { "+" } else { "-" };
        let word: Vec<String> = self.indices.iter().map(|i| format!("S{i}")).collect();
        write!(f, "{sign}{}", word.join("*J*"))?;
        if self.m == 1 {
            write!(f, "*S1")?;
        }
        Ok(())
    }
}

/// The unique S/J decomposition, found by following the tree path from
/// `theta(0)` to `A theta(0)` one flip at a time.
pub fn decompose(a: &Gl2) -> Result<Decomposition> {
    Gl2::new(a.a, a.b, a.c, a.d)?;
    let t0 = ThetaGraph::theta_upper(0);
    let steps: Vec<(u8, Gl2, ThetaGraph)> = (1..=3)
        .map(|i| {
            let g = generator(i).mul(&J);
            (i, g, g.apply_theta(&t0))
        })
        .collect();
    let mut m = *a;
    let mut indices = Vec::new();
    loop {
        let target = m.apply_theta(&t0);
        if target == t0 {
            break;
        }
        let next = path_theta(&t0, &target)[1];
        let &(i, g, _) = steps
            .iter()
            .find(|(i, _, t)| *t == next && (indices.is_empty() || *i != 3))
            .expect("every neighbour of theta(0) is some S_i J theta(0)");
        indices.push(i);
        m = g.inverse().mul(&m);
    }
    for eps in [1i8, -1] {
        for i in 1..=3u8 {
            for mm in 0..=1u8 {
                let mut cand = generator(i).scale(eps as i64);
                if mm == 1 {
                    cand = cand.mul(&S1);
                }
                if cand == m {
                    indices.push(i);
                    return Ok(Decomposition { epsilon: eps, indices, m: mm });
                }
            }
        }
    }
    unreachable!("the stabiliser of theta(0) has exactly the 12 elements eps*S_i*S1^m")
}

/// `|A|`, the number of `J`s in the decomposition.
pub fn norm(a: &Gl2) -> Result<u64> {
    Ok(decompose(a)?.j_count())
}

/// Displacement `d(theta, A theta)`.
pub fn displacement(a: &Gl2, t: &ThetaGraph) -> u64 {
    dist_theta_theta(t, &a.apply_theta(t))
}

/// `||A||` by steepest descent of the displacement function from `theta(0)`.
pub fn conj_norm(a: &Gl2) -> Result<u64> {
    Gl2::new(a.a, a.b, a.c, a.d)?;
    let mut cur = ThetaGraph::theta_upper(0);
    let mut val = displacement(a, &cur);
    'descent: loop {
        for u in cur.flips() {
            let v = displacement(a, &u);
            if v < val {
                cur = u;
                val = v;
                continue 'descent;
            }
        }
        return Ok(val);
    }
}

/// `||A||` as the minimum displacement over the ball of radius `|A|` around
/// `theta(0)`.
pub fn conj_norm_brute_force(a: &Gl2) -> Result<u64> {
    let r = norm(a)?;
    Ok(theta_ball(&ThetaGraph::theta_upper(0), r).iter().map(|t| displacement(a, t)).min().unwrap())
}

/// Finite-order classes of SL2(Z) up to GL2(Z) conjugacy.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FiniteTag {
    Identity,
    MinusIdentity,
    Order3,
    Order4,
    Order6,
}

/// Torus-bundle homeomorphism class of a monodromy.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ConjClassKey {
    FiniteOrder(FiniteTag),
    Parabolic { sign: i8, n: u64 },
    Hyperbolic { sign: i8, word: String },
}

impl ConjClassKey {
    /// A fixed matrix in the class.
    pub fn representative(&self) -> Gl2 {
        match self {
            ConjClassKey::FiniteOrder(tag) => match tag {
                FiniteTag::Identity => IDENTITY,
                FiniteTag::MinusIdentity => IDENTITY.neg(),
                FiniteTag::Order3 => Gl2 { a: 0, b: 1, c: -1, d: -1 },
                FiniteTag::Order4 => Gl2 { a: 0, b: 1, c: -1, d: 0 },
                FiniteTag::Order6 => Gl2 { a: 0, b: 1, c: -1, d: 1 },
            },
            ConjClassKey::Parabolic { sign: 1, n } => Gl2 { a: 1, b: *n as i64, c: 0, d: 1 },
            ConjClassKey::Parabolic { n, .. } => Gl2 { a: -1, b: 0, c: *n as i64, d: -1 },
            ConjClassKey::Hyperbolic { sign, word } => word_matrix(word).scale(*sign as i64),
        }
    }
}

impl fmt::Display for ConjClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConjClassKey::FiniteOrder(t) => write!(f, "{t:?}"),
            ConjClassKey::Parabolic { sign, n } => write!(f, "Parabolic({sign:+},{n})"),
            ConjClassKey::Hyperbolic { sign, word } => write!(f, "Hyperbolic({sign:+},{word})"),
        }
    }
}

/// Product of a word in the letters `R` and `L`.
pub fn word_matrix(word: &str) -> Gl2 {
    word.chars().fold(IDENTITY, |m, ch| m.mul(if ch == 'R' { &R } else { &L }))
}

/// Canonical key of a monodromy, invariant under GL2(Z) conjugation and inversion.
pub fn conj_class_key(a: &Gl2) -> Result<ConjClassKey> {
    match a.det() {
        1 => {}
        -1 => return Err(Error::NotMonodromy),
        d => return Err(Error::Determinant(d)),
    }
    let tr = a.trace();
    if *a == IDENTITY {
        return Ok(ConjClassKey::FiniteOrder(FiniteTag::Identity));
    }
    if *a == IDENTITY.neg() {
        return Ok(ConjClassKey::FiniteOrder(FiniteTag::MinusIdentity));
    }
    match tr {
        -1 => return Ok(ConjClassKey::FiniteOrder(FiniteTag::Order3)),
        0 => return Ok(ConjClassKey::FiniteOrder(FiniteTag::Order4)),
        1 => return Ok(ConjClassKey::FiniteOrder(FiniteTag::Order6)),
        2 | -2 => {
            let s = tr / 2;
            let n = (a.a - s).gcd(&a.b).gcd(&a.c).gcd(&(a.d - s));
            return Ok(ConjClassKey::Parabolic { sign: s as i8, n: n as u64 });
        }
        _ => {}
    }
    let sign: i8 = if tr > 0 { 1 } else { -1 };
    let word = rl_word(&positive_conjugate(&a.scale(sign as i64)));
    Ok(ConjClassKey::Hyperbolic { sign, word: canonical_cyclic_word(&word) })
}

/// A conjugate with all entries non-negative, for trace > 2.
fn positive_conjugate(m: &Gl2) -> Gl2 {
    let (mut a, mut b, mut c, mut d) = (m.a, m.b, m.c, m.d);
    loop {
        if c < 0 {
            b = -b;
            c = -c;
        }
        let f = |k: i64| c * k * k + (a - d) * k - b;
        let lo = Integer::div_floor(&(d - a), &(2 * c));
        let k = if f(lo) <= f(lo + 1) { lo } else { lo + 1 };
        let (na, nb, nd) = (a + k * c, -f(k), d - k * c);
        if nb > 0 {
            return Gl2 { a: na, b: nb, c, d: nd };
        }
        (a, b, c, d) = (nd, c, nb, na);
    }
}

/// Factorises a non-negative matrix of determinant 1 into `R` and `L`.
fn rl_word(p: &Gl2) -> String {
    let (mut a, mut b, mut c, mut d) = (p.a, p.b, p.c, p.d);
    let mut word = String::new();
    while !(a == 1 && b == 0 && c == 0 && d == 1) {
        if a >= c && b >= d {
            word.push('R');
            a -= c;
            b -= d;
        } else {
            word.push('L');
            c -= a;
            d -= b;
        }
    }
    word
}

fn swap_letters(w: &str) -> String {
    w.chars().map(|ch| if ch == 'R' { 'L' } else { 'R' }).collect()
}

/// Least rotation over the word, its letter swap, and their reversals.
pub fn canonical_cyclic_word(w: &str) -> String {
    let rev: String = w.chars().rev().collect();
    let variants = [w.to_string(), swap_letters(w), swap_letters(&rev), rev];
    let n = w.len();
    variants
        .iter()
        .flat_map(|v| (0..n).map(move |k| format!("{}{}", &v[k..], &v[..k])))
        .min()
        .unwrap_or_default()
}

/// Diagonal of the Smith normal form of a 3x3 integer matrix.
pub fn smith_normal_form(m: [[i64; 3]; 3]) -> [i64; 3] {
    let mut a: [[i128; 3]; 3] = m.map(|r| r.map(|x| x as i128));
    for k in 0..3 {
        loop {
            let pivot = (k..3)
                .flat_map(|i| (k..3).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else { break };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let p = a[k][k];
            let mut clean = true;
            for i in k + 1..3 {
                let q = a[i][k].div_euclid(p);
                for j in k..3 {
                    a[i][j] -= q * a[k][j];
                }
                clean &= a[i][k] == 0;
            }
            for j in k + 1..3 {
                let q = a[k][j].div_euclid(p);
                for i in k..3 {
                    a[i][j] -= q * a[i][k];
                }
                clean &= a[k][j] == 0;
            }
            if clean {
                break;
            }
        }
    }
    let mut diag = [a[0][0].abs(), a[1][1].abs(), a[2][2].abs()];
    for i in 0..3 {
        for j in i + 1..3 {
            let (g, l) = (diag[i].gcd(&diag[j]), diag[i].lcm(&diag[j]));
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag.map(|x| x as i64)
}
