//! Enumeration of all geometric closed orientable irreducible manifolds of
//! complexity at most 9, plus the partial hyperbolic list in complexity 10.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::chainlink::{self, FillingTriple, HomologyGroup};
use crate::complexity::{h_function, profile, profile_with_cap, CValue, Exceptional, ManifoldDescriptor};
use crate::error::{Error, Result};
use crate::farey::{pq_complexity, Slope};
use crate::gl2::{conj_class_key, conj_norm, ConjClassKey, FiniteTag, Gl2, J, S1, S2, S3};
use crate::seifert::{BaseSurface, Geometry, SeifertManifold};

/// Census rows, with lens spaces split from the other elliptic manifolds.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum CensusGeometry {
    Lens,
    Elliptic,
    Flat,
    Nil,
    H2xR,
    SL2,
    Sol,
    Hyperbolic,
}

impl CensusGeometry {
    pub const ALL: [CensusGeometry; 8] = [
        CensusGeometry::Lens,
        CensusGeometry::Elliptic,
        CensusGeometry::Flat,
        CensusGeometry::Nil,
        CensusGeometry::H2xR,
        CensusGeometry::SL2,
        CensusGeometry::Sol,
        CensusGeometry::Hyperbolic,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CensusGeometry::Lens => "lens",
            CensusGeometry::Elliptic => "elliptic",
            CensusGeometry::Flat => "flat",
            CensusGeometry::Nil => "Nil",
            CensusGeometry::H2xR => "H2xR",
            CensusGeometry::SL2 => "SL2",
            CensusGeometry::Sol => "Sol",
            CensusGeometry::Hyperbolic => "hyperbolic",
        }
    }

    fn from_seifert(g: Geometry) -> Result<CensusGeometry> {
        Ok(match g {
            Geometry::Elliptic => CensusGeometry::Elliptic,
            Geometry::Flat => CensusGeometry::Flat,
            Geometry::Nil => CensusGeometry::Nil,
            Geometry::H2xR => CensusGeometry::H2xR,
            Geometry::SL2 => CensusGeometry::SL2,
            other => return Err(Error::Unsupported(format!("{other} in census"))),
        })
    }
}

impl fmt::Display for CensusGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CensusGeometry {
    type Err = Error;
    fn from_str(s: &str) -> Result<CensusGeometry> {
        Self::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Unsupported(format!("geometry '{s}'")))
    }
}

/// One manifold of the census.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct CensusEntry {
    /// Canonical descriptor; re-parses to itself.
    pub descriptor: ManifoldDescriptor,
    pub geometry: CensusGeometry,
    /// Seifert parameters for flat and Nil torus bundles.
    pub seifert_form: Option<SeifertManifold>,
    /// First homology, for chain-link fillings.
    pub homology: Option<HomologyGroup>,
    /// A realization with least `h`, for chain-link fillings.
    pub min_h_form: Option<FillingTriple>,
}

impl CensusEntry {
    fn plain(descriptor: ManifoldDescriptor, geometry: CensusGeometry) -> CensusEntry {
        CensusEntry { descriptor, geometry, seifert_form: None, homology: None, min_h_form: None }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CensusRow {
    pub complexity: u64,
    pub geometry: CensusGeometry,
    pub manifolds: Vec<CensusEntry>,
}

/// Caveats attached to a report.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CensusFlags {
    pub orbit_cap: i64,
    pub orbit_capped: bool,
    /// Hyperbolic deduplication assumes the known repetitions are complete.
    pub repetitions_conjecture: bool,
    /// Sol manifolds fibred over the interval are not listed.
    pub sol_interval_fibred_omitted: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CensusReport {
    pub c_max: u64,
    pub rows: Vec<CensusRow>,
    pub flags: CensusFlags,
}

impl CensusReport {
    pub fn count(&self, c: u64, g: CensusGeometry) -> usize {
        self.row(c, g).map_or(0, |r| r.manifolds.len())
    }

    pub fn row(&self, c: u64, g: CensusGeometry) -> Option<&CensusRow> {
        self.rows.iter().find(|r| r.complexity == c && r.geometry == g)
    }

    pub fn total(&self, c: u64) -> usize {
        self.rows.iter().filter(|r| r.complexity == c).map(|r| r.manifolds.len()).sum()
    }
}

/// Coprime `(a,b)`, `a,b > 0`, with `|a,b| <= depth`, from the recursion tree.
fn positive_pairs(depth: u64) -> Vec<(i64, i64, u64)> {
    let mut out = vec![(1, 1, 0)];
    let mut frontier = vec![(1i64, 1i64)];
    for d in 1..=depth {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for (a, b) in frontier {
            next.push((a + b, b));
            next.push((a, a + b));
        }
        out.extend(next.iter().map(|&(a, b)| (a, b, d)));
        frontier = next;
    }
    out
}

/// Lens spaces with `c = |p,q| - 2`.
pub fn enumerate_lens(c: u64) -> Vec<ManifoldDescriptor> {
    let set: BTreeSet<ManifoldDescriptor> = positive_pairs(c + 2)
        .into_iter()
        .filter(|&(a, b, d)| d == c + 2 && a > b)
        .filter_map(|(a, b, _)| ManifoldDescriptor::lens(a, b).ok())
        .filter(|m| matches!(m, ManifoldDescriptor::Lens { .. }))
        .collect();
    set.into_iter().collect()
}

/// Normalized fibres `p > q > 0` with `|p,q| <= max`, sorted by `|p,q|`.
fn fibres_up_to(max: u64) -> Vec<((i64, i64), u64)> {
    let mut v: Vec<_> = positive_pairs(max).into_iter().filter(|&(a, b, _)| a > b).map(|(a, b, d)| ((a, b), d)).collect();
    v.sort_by_key(|&(f, d)| (d, f));
    v
}

/// Expressions over `base` whose generic value is at most `budget`. With
/// `first = Some(i)` only fibre lists starting with fibre `i` are produced;
/// with `None` only the empty list.
fn seifert_candidates(
    base: BaseSurface,
    budget: i64,
    fibres: &[((i64, i64), u64)],
    first: Option<usize>,
) -> Vec<SeifertManifold> {
    let chi = base.chi();
    let mut out = Vec::new();
    let mut emit = |fib: &[(i64, i64)], rest: i64| {
        let k = fib.len() as i64;
        let mut t = -(k / 2);
        while (t - 1 + chi).max(0) <= rest {
            if let Ok(m) = SeifertManifold::normalize(base, fib, t) {
                out.push(m);
            }
            t += 1;
        }
    };
    let room = budget - 6 * (1 - chi);
    match first {
        None => {
            if room >= 0 {
                emit(&[], room);
            }
        }
        Some(i) => {
            let (f, d) = fibres[i];
            let room = room - d as i64 - 2;
            if room >= 0 {
                let mut chosen = vec![f];
                extend_fibres(i, room, fibres, &mut chosen, &mut emit);
            }
        }
    }
    out
}

/// Emits `chosen` and every extension by fibres at index `>= start` fitting in `room`.
fn extend_fibres(
    start: usize,
    room: i64,
    fibres: &[((i64, i64), u64)],
    chosen: &mut Vec<(i64, i64)>,
    emit: &mut dyn FnMut(&[(i64, i64)], i64),
) {
    emit(chosen, room);
    for (i, &(f, d)) in fibres.iter().enumerate().skip(start) {
        let cost = d as i64 + 2;
        if cost > room {
            break;
        }
        chosen.push(f);
        extend_fibres(i, room - cost, fibres, chosen, emit);
        chosen.pop();
    }
}

/// Genuine Seifert manifolds with `c_9 = c`, with their geometry.
pub fn enumerate_seifert(c: u64) -> Result<Vec<(SeifertManifold, CensusGeometry)>> {
    let budget = c as i64 + 2;
    let fibres = fibres_up_to(c + 2);
    let shards: Vec<(BaseSurface, Option<usize>)> = BaseSurface::all()
        .into_iter()
        .flat_map(|b| std::iter::once(None).chain((0..fibres.len()).map(Some)).map(move |i| (b, i)))
        .collect();
    let found: Vec<Vec<(SeifertManifold, CensusGeometry)>> = shards
        .par_iter()
        .map(|&(base, first)| -> Result<Vec<_>> {
            let mut out = Vec::new();
            for m in seifert_candidates(base, budget, &fibres, first) {
                if !matches!(m.coincidence(), Ok(None)) {
                    continue;
                }
                let m = m.canonical();
                let p = profile(&ManifoldDescriptor::Seifert(m.clone()))?;
                if p.c9() == CValue::Finite(c) {
                    let g = CensusGeometry::from_seifert(m.geometry_of()?)?;
                    out.push((m, g));
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let set: BTreeSet<_> = found.into_iter().flatten().collect();
    Ok(set.into_iter().collect())
}

/// Matrices `eps S_i0 J S_i1 ... J S_in S1^m` with at most `max_j` factors `J`.
fn matrices_up_to(max_j: usize) -> Vec<Gl2> {
    let gens = [S1, S2, S3];
    let mut words: Vec<Gl2> = gens.to_vec();
    let mut layer = words.clone();
    for _ in 0..max_j {
        layer = layer.iter().flat_map(|w| gens.iter().map(move |g| w.mul(&J).mul(g))).collect();
        words.extend(layer.iter().copied());
    }
    let mut out: BTreeSet<Gl2> = BTreeSet::new();
    for w in words {
        for m in [w, w.mul(&S1)] {
            out.insert(m);
            out.insert(m.neg());
        }
    }
    out.into_iter().collect()
}

/// Seifert parameters of a flat or Nil torus bundle.
pub fn bundle_seifert_form(key: &ConjClassKey) -> Result<SeifertManifold> {
    let s2 = |f: &[(i64, i64)], t| SeifertManifold::normalize(BaseSurface::SPHERE, f, t);
    let m = match key {
        ConjClassKey::FiniteOrder(FiniteTag::Identity) => SeifertManifold::normalize(BaseSurface::TORUS, &[], 0)?,
        ConjClassKey::FiniteOrder(FiniteTag::MinusIdentity) => s2(&[(2, 1); 4], -2)?,
        ConjClassKey::FiniteOrder(FiniteTag::Order3) => s2(&[(3, 1); 3], -1)?,
        ConjClassKey::FiniteOrder(FiniteTag::Order4) => s2(&[(2, 1), (4, 1), (4, 1)], -1)?,
        ConjClassKey::FiniteOrder(FiniteTag::Order6) => s2(&[(2, 1), (3, 1), (6, 1)], -1)?,
        ConjClassKey::Parabolic { sign: 1, n } => SeifertManifold::normalize(BaseSurface::TORUS, &[], *n as i64)?,
        ConjClassKey::Parabolic { n, .. } => SeifertManifold::normalize(BaseSurface::KLEIN_BOTTLE, &[], *n as i64)?,
        ConjClassKey::Hyperbolic { .. } => return Err(Error::IdentificationGap(key.to_string())),
    };
    let back = m.coincidence()?;
    if back != Some(ManifoldDescriptor::TorusBundle(key.representative())) {
        return Err(Error::IdentificationGap(format!("{key} vs {m}")));
    }
    Ok(m.canonical())
}

/// Torus bundles with `c_9 = c`: flat and Nil ones carry their Seifert form.
pub fn enumerate_bundles(c: u64) -> Result<Vec<CensusEntry>> {
    if c < 6 {
        return Ok(Vec::new());
    }
    let mut classes: BTreeMap<ConjClassKey, Gl2> = BTreeMap::new();
    for a in matrices_up_to(4).into_iter().filter(|a| a.det() == 1) {
        classes.entry(conj_class_key(&a)?).or_insert(a);
    }
    let mut out = Vec::new();
    for (key, a) in classes {
        let norm = conj_norm(&a)?;
        if (norm + 5).max(6) != c {
            continue;
        }
        let rep = key.representative();
        let descriptor = ManifoldDescriptor::TorusBundle(rep);
        let entry = match key {
            ConjClassKey::Hyperbolic { .. } => CensusEntry::plain(descriptor, CensusGeometry::Sol),
            ConjClassKey::FiniteOrder(_) | ConjClassKey::Parabolic { .. } => {
                let geometry = if matches!(key, ConjClassKey::Parabolic { n, .. } if n > 0) {
                    CensusGeometry::Nil
                } else {
                    CensusGeometry::Flat
                };
                CensusEntry { seifert_form: Some(bundle_seifert_form(&key)?), ..CensusEntry::plain(descriptor, geometry) }
            }
        };
        out.push(entry);
    }
    out.sort();
    Ok(out)
}

/// Slopes `x` with `|p+2q, q| <= max`, paired with that value.
fn slopes_by_term(max: u64) -> Vec<(Slope, u64)> {
    let mut set: BTreeSet<(u64, Slope)> = BTreeSet::new();
    let mut add = |a: i64, b: i64| {
        if let (Ok(s), Ok(y)) = (Slope::new(a - 2 * b, b), pq_complexity(a, b)) {
            if y <= max {
                set.insert((y, s));
            }
        }
    };
    add(1, 0);
    add(0, 1);
    for (a, b, _) in positive_pairs(max) {
        add(a, b);
        add(-a, b);
    }
    set.into_iter().map(|(y, s)| (s, y)).collect()
}

/// Hyperbolic chain-link fillings with `c_9 = c`, canonical and sorted.
pub fn enumerate_hyperbolic(c: u64, cap: i64) -> Result<Vec<CensusEntry>> {
    Ok(hyperbolic_classes(c, cap)?.into_iter().filter(|(v, _)| *v == c).map(|(_, e)| e).collect())
}

/// Every orbit containing a triple with `h <= c_max`, with its `c_9`.
fn hyperbolic_classes(c_max: u64, cap: i64) -> Result<Vec<(u64, CensusEntry)>> {
    if c_max < 2 {
        return Ok(Vec::new());
    }
    let slopes = slopes_by_term(c_max - 2);
    let budget = c_max as i64 - 2;
    let triples: Vec<FillingTriple> = (0..slopes.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut v = Vec::new();
            let (a, ta) = slopes[i];
            for j in i..slopes.len() {
                let (b, tb) = slopes[j];
                if (ta + tb) as i64 > budget {
                    break;
                }
                for &(d, td) in &slopes[j..] {
                    if (ta + tb + td) as i64 > budget {
                        break;
                    }
                    let t = FillingTriple::new(a, b, d);
                    if chainlink::is_hyperbolic(&t) && h_function(&t).is_ok_and(|h| h <= c_max) {
                        v.push(t);
                    }
                }
            }
            v.into_iter()
        })
        .collect();
    let classes: Result<BTreeMap<FillingTriple, (u64, CensusEntry)>> = triples
        .par_iter()
        .map(|t| -> Result<(FillingTriple, (u64, CensusEntry))> {
            let orbit = chainlink::orbit(t, cap)?;
            let canon = orbit[0];
            let (h, best) = orbit.iter().map(|u| (h_function(u).unwrap(), *u)).min().unwrap();
            let entry = CensusEntry {
                descriptor: ManifoldDescriptor::ChainFilling(canon),
                geometry: CensusGeometry::Hyperbolic,
                seifert_form: None,
                homology: Some(chainlink::homology(&canon)),
                min_h_form: Some(best),
            };
            Ok((canon, (h, entry)))
        })
        .collect();
    Ok(classes?.into_values().collect())
}

fn exceptional_row() -> Vec<CensusEntry> {
    [Exceptional::S3, Exceptional::RP3, Exceptional::L31]
        .into_iter()
        .map(|e| CensusEntry::plain(ManifoldDescriptor::Exceptional(e), CensusGeometry::Lens))
        .collect()
}

/// All rows for `0 <= c <= c_max`, deduplicated and sorted.
pub fn full_census(c_max: u64) -> Result<CensusReport> {
    full_census_with_cap(c_max, chainlink::DEFAULT_ORBIT_CAP)
}

/// Like [`full_census`], with an explicit orbit height cap.
pub fn full_census_with_cap(c_max: u64, cap: i64) -> Result<CensusReport> {
    if c_max > 9 {
        return Err(Error::Unsupported(format!("census up to {c_max}; at most 9 is supported")));
    }
    let mut flags = CensusFlags {
        orbit_cap: cap,
        orbit_capped: false,
        repetitions_conjecture: false,
        sol_interval_fibred_omitted: true,
    };
    let per_c: Vec<Vec<CensusEntry>> = (0..=c_max)
        .into_par_iter()
        .map(|c| -> Result<Vec<CensusEntry>> {
            let mut v = if c == 0 {
                exceptional_row()
            } else {
                enumerate_lens(c).into_iter().map(|m| CensusEntry::plain(m, CensusGeometry::Lens)).collect()
            };
            for (m, g) in enumerate_seifert(c)? {
                v.push(CensusEntry::plain(ManifoldDescriptor::Seifert(m), g));
            }
            v.extend(enumerate_bundles(c)?);
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    let hyperbolic = match hyperbolic_classes(c_max, cap) {
        Ok(h) => h,
        Err(Error::OrbitCapped { .. }) => {
            flags.orbit_capped = true;
            Vec::new()
        }
        Err(e) => return Err(e),
    };
    let mut rows = Vec::new();
    let mut seen: BTreeSet<ManifoldDescriptor> = BTreeSet::new();
    for (c, entries) in per_c.into_iter().enumerate() {
        let c = c as u64;
        let mut all = entries;
        all.extend(hyperbolic.iter().filter(|(v, _)| *v == c).map(|(_, e)| e.clone()));
        for g in CensusGeometry::ALL {
            let mut manifolds: Vec<CensusEntry> = all.iter().filter(|e| e.geometry == g).cloned().collect();
            manifolds.sort();
            for e in &manifolds {
                if !seen.insert(e.descriptor.clone()) {
                    return Err(Error::IdentificationGap(format!("{} listed twice", e.descriptor)));
                }
            }
            if g == CensusGeometry::Hyperbolic && !manifolds.is_empty() {
                flags.repetitions_conjecture = true;
            }
            rows.push(CensusRow { complexity: c, geometry: g, manifolds });
        }
    }
    Ok(CensusReport { c_max, rows, flags })
}

/// Re-evaluates `c_9` of every listed manifold.
pub fn self_check(report: &CensusReport) -> Result<()> {
    for row in &report.rows {
        for e in &row.manifolds {
            let p = profile_with_cap(&e.descriptor, report.flags.orbit_cap)?;
            if p.c9() != CValue::Finite(row.complexity) {
                return Err(Error::IdentificationGap(format!("{} has c9 {}", e.descriptor, p.c9())));
            }
        }
    }
    Ok(())
}
