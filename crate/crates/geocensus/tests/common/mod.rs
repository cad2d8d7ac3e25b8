//! Oracles and golden data shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use geocensus::chainlink::{homology, is_hyperbolic, m221_exceptional, relation_neighbours, FillingTriple};
use geocensus::complexity::{profile, CValue, ManifoldDescriptor};
use geocensus::farey::{dist_slope_theta, dist_theta_theta, pq_complexity, Slope, ThetaGraph};
use geocensus::gl2::{self, conj_norm, conj_norm_brute_force, decompose, norm, smith_normal_form, Gl2};
use geocensus::seifert::{BaseSurface, SeifertManifold};
use num_integer::Integer;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

// ---------------------------------------------------------------------------
// Farey oracles

/// `n/d` with `d >= 0`; `(1,0)` is infinity.
type Frac = (i128, i128);

fn norm_frac(n: i128, d: i128) -> Frac {
    if d < 0 || (d == 0 && n < 0) {
        (-n, -d)
    } else {
        (n, d)
    }
}

fn lt(a: Frac, b: Frac) -> bool {
    a.0 * b.1 < b.0 * a.1
}

/// True if `x` is strictly inside the arc of the circle `R u {inf}` with ends
/// `u`, `v` that does not contain `w`.
fn inside_arc(x: Frac, u: Frac, v: Frac, w: Frac) -> bool {
    let inf = |f: Frac| f.1 == 0;
    if inf(u) || inf(v) {
        let e = if inf(u) { v } else { u };
        if inf(x) || x == e {
            return false;
        }
        return if lt(e, w) { lt(x, e) } else { lt(e, x) };
    }
    let (lo, hi) = if lt(u, v) { (u, v) } else { (v, u) };
    let between = |y: Frac| !inf(y) && lt(lo, y) && lt(y, hi);
    if between(w) {
        x != lo && x != hi && !between(x)
    } else {
        between(x)
    }
}

/// Number of Farey edges crossed by the geodesic from the centre of
/// `{0, 1, inf}` to `p/q`, by walking triangles with real-line comparisons.
pub fn crossing_count(p: i64, q: i64) -> u64 {
    let s = norm_frac(p as i128, q as i128);
    let mut tri: [Frac; 3] = [(0, 1), (1, 1), (1, 0)];
    let mut count = 0;
    while !tri.contains(&s) {
        let (i, j, k) = [(0, 1, 2), (1, 2, 0), (0, 2, 1)]
            .into_iter()
            .find(|&(i, j, k)| inside_arc(s, tri[i], tri[j], tri[k]))
            .expect("target lies beyond some edge");
        let (u, v, w) = (tri[i], tri[j], tri[k]);
        let plus = norm_frac(u.0 + v.0, u.1 + v.1);
        let new = if plus == w { norm_frac(u.0 - v.0, u.1 - v.1) } else { plus };
        tri = [u, v, new];
        count += 1;
    }
    count
}

/// Flip distances from `center` by breadth-first search.
pub fn bfs(center: ThetaGraph, radius: u64) -> HashMap<ThetaGraph, u64> {
    let mut dist = HashMap::from([(center, 0)]);
    let mut queue = VecDeque::from([center]);
    while let Some(t) = queue.pop_front() {
        let d = dist[&t];
        if d == radius {
            continue;
        }
        for u in t.flips() {
            if !dist.contains_key(&u) {
                dist.insert(u, d + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

pub fn theta0() -> ThetaGraph {
    ThetaGraph::theta_upper(0)
}

pub fn coprime_pair() -> impl Strategy<Value = (i64, i64)> {
    (-300i64..=300, -300i64..=300).prop_filter("coprime", |&(p, q)| (p, q) != (0, 0) && p.gcd(&q) == 1)
}

pub fn check_pq_symmetries((p, q): (i64, i64)) -> Result<(), TestCaseError> {
    let pq = pq_complexity(p, q).unwrap();
    prop_assert_eq!(pq, pq_complexity(-p, -q).unwrap());
    let (a, b) = (p.abs(), q.abs());
    if a > 0 && b > 0 {
        prop_assert_eq!(pq_complexity(a, b).unwrap(), pq_complexity(b, a).unwrap());
        if b < a {
            prop_assert_eq!(pq_complexity(a, b).unwrap(), pq_complexity(a, a - b).unwrap());
            let inv = b.extended_gcd(&a).x.rem_euclid(a);
            prop_assert_eq!(pq_complexity(a, b).unwrap(), pq_complexity(a, inv).unwrap());
        }
        prop_assert_eq!(pq_complexity(a, -b).unwrap(), pq_complexity(a, b).unwrap() + 1);
    }
    Ok(())
}

pub fn check_pq_crossing((p, q): (i64, i64)) -> Result<(), TestCaseError> {
    prop_assert_eq!(pq_complexity(p, q).unwrap(), crossing_count(p, q));
    Ok(())
}

/// Theta-graph reached from `theta0` by a sequence of flip choices.
pub fn walk(steps: &[usize]) -> ThetaGraph {
    steps.iter().fold(theta0(), |t, &i| t.flips()[i % 3])
}

pub fn flip_walk() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..3, 0..12)
}

/// Tree distance and slope distance against BFS from a random centre.
pub fn check_tree_distance(steps: Vec<usize>, pick: usize) -> Result<(), TestCaseError> {
    let a = walk(&steps);
    let ball = bfs(a, 7);
    let mut near: Vec<(&ThetaGraph, &u64)> = ball.iter().filter(|(_, d)| **d <= 6).collect();
    near.sort();
    let (b, d) = near[pick % near.len()];
    prop_assert_eq!(dist_theta_theta(&a, b), *d);
    prop_assert_eq!(dist_theta_theta(b, &a), *d);
    for s in b.slopes() {
        let best = ball.iter().filter(|(t, _)| t.contains(s)).map(|(_, d)| *d).min().unwrap();
        if best <= 6 {
            prop_assert_eq!(dist_slope_theta(s, &a), best as i64 - 1);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// GL2 oracles

pub fn matrix_word() -> impl Strategy<Value = (bool, Vec<u8>)> {
    (any::<bool>(), prop::collection::vec(0u8..6, 0..14))
}

pub fn word_to_matrix(neg: bool, w: &[u8]) -> Gl2 {
    let gens = [gl2::S1, gl2::S2, gl2::S3, gl2::J, gl2::R, gl2::L];
    let m = w.iter().fold(gl2::IDENTITY, |m, &i| m.mul(&gens[i as usize]));
    if neg {
        m.neg()
    } else {
        m
    }
}

pub fn check_decompose_round_trip(a: Gl2) -> Result<(), TestCaseError> {
    let d = decompose(&a).unwrap();
    prop_assert_eq!(d.reconstruct(), a);
    prop_assert_eq!(d.j_count(), dist_theta_theta(&theta0(), &a.apply_theta(&theta0())));
    Ok(())
}

pub fn check_norm_inverse(a: Gl2) -> Result<(), TestCaseError> {
    prop_assert_eq!(norm(&a).unwrap(), norm(&a.inverse()).unwrap());
    Ok(())
}

pub fn check_conj_invariance(a: Gl2, b: Gl2) -> Result<(), TestCaseError> {
    let n = conj_norm(&a).unwrap();
    prop_assert_eq!(conj_norm(&a.conjugate_by(&b)).unwrap(), n);
    prop_assert_eq!(conj_norm(&a.inverse()).unwrap(), n);
    prop_assert!(n <= norm(&a).unwrap());
    Ok(())
}

pub fn check_descent(a: Gl2) -> Result<(), TestCaseError> {
    prop_assert_eq!(conj_norm(&a).unwrap(), conj_norm_brute_force(&a).unwrap());
    Ok(())
}

/// Every normal form `eps S_i0 J S_i1 ... J S_in S1^m` with at most `max_j`
/// letters `J`: `i0, in` in 1..=3 and the middle indices in 1..=2.
pub fn normal_forms(max_j: usize) -> Vec<(i8, Vec<u8>, u8)> {
    let mut prefixes: Vec<Vec<u8>> = (1..=3).map(|i| vec![i]).collect();
    let mut words: Vec<Vec<u8>> = prefixes.clone();
    for _ in 0..max_j {
        for p in &prefixes {
            for last in 1..=3u8 {
                let mut v = p.clone();
                v.push(last);
                words.push(v);
            }
        }
        prefixes = prefixes
            .iter()
            .flat_map(|p| (1..=2u8).map(move |mid| [p.clone(), vec![mid]].concat()))
            .collect();
    }
    let mut out = Vec::new();
    for w in words {
        for eps in [1i8, -1] {
            for m in 0..=1u8 {
                out.push((eps, w.clone(), m));
            }
        }
    }
    out
}

/// `d1`, `d1 d2`, `d1 d2 d3` from gcds of minors.
pub fn determinantal_divisors(m: [[i64; 3]; 3]) -> [i128; 3] {
    let a = m.map(|r| r.map(|x| x as i128));
    let g1 = a.iter().flatten().fold(0i128, |g, &x| g.gcd(&x));
    let mut g2 = 0i128;
    for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
        for (c1, c2) in [(0, 1), (0, 2), (1, 2)] {
            g2 = g2.gcd(&(a[r1][c1] * a[r2][c2] - a[r1][c2] * a[r2][c1]));
        }
    }
    let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    [g1, g2, det.abs()]
}

pub fn check_smith(m: [[i64; 3]; 3]) -> Result<(), TestCaseError> {
    let d = smith_normal_form(m);
    for w in d.windows(2) {
        prop_assert!(w[0] >= 0 && w[1] >= 0);
        prop_assert!(if w[0] == 0 { w[1] == 0 } else { w[1] % w[0] == 0 }, "{:?}", d);
    }
    let [g1, g2, g3] = determinantal_divisors(m);
    let d: [i128; 3] = d.map(|x| x as i128);
    prop_assert_eq!(d[0], g1);
    prop_assert_eq!(d[0] * d[1], g2);
    prop_assert_eq!(d[0] * d[1] * d[2], g3);
    Ok(())
}

pub fn small_matrix() -> impl Strategy<Value = [[i64; 3]; 3]> {
    prop::array::uniform3(prop::array::uniform3(-20i64..=20))
}

/// A conjugator `P` with entries in `[-bound, bound]` and `P A = B P`, or
/// `P A = B^-1 P`.
pub fn find_conjugator(a: &Gl2, b: &Gl2, bound: i64) -> Option<Gl2> {
    let r = -bound..=bound;
    for p in r.clone() {
        for q in r.clone() {
            for s in r.clone() {
                for t in r.clone() {
                    let Ok(m) = Gl2::new(p, q, s, t) else { continue };
                    if m.mul(a) == b.mul(&m) || m.mul(a) == b.inverse().mul(&m) {
                        return Some(m);
                    }
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Seifert oracles

/// `|p,q|` for `p > q > 0` from the recursive definition.
pub fn pq_recursive(p: i64, q: i64) -> i64 {
    match (p, q) {
        (1, 0) | (0, 1) | (1, 1) => 0,
        _ if p > q => pq_recursive(p - q, q) + 1,
        _ => pq_recursive(p, q - p) + 1,
    }
}

/// The generic Seifert value computed from scratch.
pub fn seifert_oracle(chi: i64, fibres: &[(i64, i64)], t: i64) -> i64 {
    let sum: i64 = fibres.iter().map(|&(p, q)| pq_recursive(p, q) + 2).sum();
    (t - 1 + chi).max(0) - 6 * (chi - 1) + sum
}

pub fn fibre() -> impl Strategy<Value = (i64, i64)> {
    (2i64..=15, 1i64..15).prop_filter_map("coprime fibre", |(p, q)| (q < p && p.gcd(&q) == 1).then_some((p, q)))
}

pub fn seifert_input() -> impl Strategy<Value = (usize, Vec<(i64, i64)>, i64)> {
    (0usize..4, prop::collection::vec(fibre(), 0..6), -3i64..6)
}

pub fn check_formula_forms((b, fibres, t): (usize, Vec<(i64, i64)>, i64)) -> Result<(), TestCaseError> {
    let base = BaseSurface::all()[b];
    let mut sorted = fibres.clone();
    sorted.sort();
    let m = SeifertManifold::normalize(base, &fibres, t).unwrap();
    prop_assert_eq!(m.fibres(), &sorted[..]);
    let oracle = seifert_oracle(base.chi(), &sorted, t);
    prop_assert_eq!(geocensus::complexity::seifert_formula(&m) as i64, oracle);
    prop_assert_eq!(geocensus::complexity::seifert_formula_c3(&m) as i64, oracle);
    Ok(())
}

/// Atoroidal three-fibre value; `None` for the four excluded quadruples.
pub fn atoroidal_c3(fibres: &[(i64, i64)], t: i64) -> Option<i64> {
    let mut ps: Vec<i64> = fibres.iter().map(|f| f.0).collect();
    ps.sort();
    let special = t == -1 && fibres.iter().all(|f| f.1 == 1) && [[2, 2, 2], [2, 2, 3], [2, 3, 6], [2, 4, 4]].contains(&[ps[0], ps[1], ps[2]]);
    (!special).then(|| fibres.iter().map(|&(p, q)| pq_recursive(p, q)).sum::<i64>() + t + 1)
}

pub fn c3_of(d: &ManifoldDescriptor) -> Option<u64> {
    profile(d).ok().and_then(|p| p.c(3).finite())
}

// ---------------------------------------------------------------------------
// Chain-link oracles

pub fn slopes_up_to(h: i64) -> Vec<Slope> {
    let mut v = vec![Slope::INF];
    for q in 1..=h {
        for p in -h..=h {
            if p.gcd(&q) == 1 {
                v.push(Slope::new(p, q).unwrap());
            }
        }
    }
    v
}

pub fn slope_up_to(h: i64) -> impl Strategy<Value = Slope> {
    (-h..=h, 0..=h).prop_filter_map("coprime", |(p, q)| ((p, q) != (0, 0) && p.gcd(&q) == 1).then(|| Slope::new(p, q).unwrap()))
}

pub fn check_m221(s: Slope) -> Result<(), TestCaseError> {
    let t = FillingTriple::new(Slope::integer(1), Slope::integer(-4), s);
    prop_assert_eq!(is_hyperbolic(&t), !m221_exceptional(s), "{}", t);
    Ok(())
}

pub fn check_relations(t: FillingTriple) -> Result<(), TestCaseError> {
    let hyp = is_hyperbolic(&t);
    let h = homology(&t);
    for n in relation_neighbours(&t) {
        prop_assert_eq!(is_hyperbolic(&n), hyp, "{} -> {}", t, n);
        prop_assert_eq!(homology(&n), h.clone(), "{} -> {}", t, n);
    }
    Ok(())
}

pub fn triple_up_to(h: i64) -> impl Strategy<Value = FillingTriple> {
    (slope_up_to(h), slope_up_to(h), slope_up_to(h)).prop_map(|(a, b, c)| FillingTriple::new(a, b, c))
}

// ---------------------------------------------------------------------------
// Runner used by the acceptance target

/// Runs `check` on `cases` random inputs; returns the first failure message.
pub fn run_cases<S: Strategy>(
    cases: u32,
    strategy: S,
    check: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, check).map_err(|e| e.to_string())
}

pub fn finite(v: CValue) -> u64 {
    v.finite().expect("finite value")
}

// ---------------------------------------------------------------------------
// Golden data

/// Lens spaces by complexity, as `(p, q)`.
pub const LENS: [&[(i64, i64)]; 7] = [
    &[],
    &[(4, 1), (5, 2)],
    &[(5, 1), (7, 2), (8, 3)],
    &[(6, 1), (9, 2), (10, 3), (11, 3), (12, 5), (13, 5)],
    &[(7, 1), (11, 2), (13, 3), (14, 3), (15, 4), (16, 7), (17, 5), (18, 5), (19, 7), (21, 8)],
    &[
        (8, 1), (13, 2), (16, 3), (17, 3), (17, 4), (19, 4), (20, 9), (22, 5), (23, 5), (23, 7),
        (24, 7), (25, 7), (25, 9), (26, 7), (27, 8), (29, 8), (29, 12), (30, 11), (31, 12), (34, 13),
    ],
    &[
        (9, 1), (15, 2), (19, 3), (20, 3), (21, 4), (23, 4), (24, 5), (24, 11), (27, 5), (28, 5),
        (29, 9), (30, 7), (31, 7), (31, 11), (32, 7), (33, 7), (33, 10), (34, 9), (35, 8), (36, 11),
        (37, 8), (37, 10), (39, 14), (39, 16), (40, 11), (41, 11), (41, 12), (41, 16), (43, 12), (44, 13),
        (45, 19), (46, 17), (47, 13), (49, 18), (50, 19), (55, 21),
    ],
];

/// Seifert manifolds over the sphere of complexity 6, with geometry.
pub const S2_C6: &[(&str, &str)] = &[
    ("sfs(S2;(2,1),(2,1),(2,1);2)", "elliptic"),
    ("sfs(S2;(2,1),(2,1),(3,1);1)", "elliptic"),
    ("sfs(S2;(2,1),(2,1),(3,2);1)", "elliptic"),
    ("sfs(S2;(2,1),(2,1),(4,1);0)", "elliptic"),
    ("sfs(S2;(2,1),(2,1),(4,3);0)", "elliptic"),
    ("sfs(S2;(2,1),(2,1),(5,2);0)", "elliptic"),
    ("sfs(S2;(2,1),(2,1),(5,3);0)", "elliptic"),
    ("sfs(S2;(2,1),(2,1),(5,4);-1)", "elliptic"),
    ("sfs(S2;(2,1),(2,1),(7,2);-1)", "elliptic"),
    ("sfs(S2;(2,1),(2,1),(7,3);-1)", "elliptic"),
    ("sfs(S2;(2,1),(2,1),(7,4);-1)", "elliptic"),
    ("sfs(S2;(2,1),(2,1),(7,5);-1)", "elliptic"),
    ("sfs(S2;(2,1),(2,1),(8,3);-1)", "elliptic"),
    ("sfs(S2;(2,1),(2,1),(8,5);-1)", "elliptic"),
    ("sfs(S2;(2,1),(3,1),(3,1);0)", "elliptic"),
    ("sfs(S2;(2,1),(3,1),(3,2);0)", "elliptic"),
    ("sfs(S2;(2,1),(3,1),(4,3);-1)", "elliptic"),
    ("sfs(S2;(2,1),(3,1),(5,2);-1)", "elliptic"),
    ("sfs(S2;(2,1),(3,1),(5,3);-1)", "elliptic"),
    ("sfs(S2;(2,1),(3,2),(3,2);0)", "elliptic"),
    ("sfs(S2;(2,1),(3,2),(4,1);-1)", "elliptic"),
    ("sfs(S2;(2,1),(3,2),(4,3);-1)", "elliptic"),
    ("sfs(S2;(2,1),(3,2),(5,2);-1)", "elliptic"),
    ("sfs(S2;(2,1),(3,2),(5,3);-1)", "elliptic"),
    ("sfs(S2;(3,1),(3,1),(3,1);-1)", "flat"),
    ("sfs(S2;(3,1),(3,1),(3,2);-1)", "Nil"),
    ("sfs(S2;(3,1),(3,2),(3,2);-1)", "Nil"),
    ("sfs(S2;(3,2),(3,2),(3,2);-1)", "Nil"),
    ("sfs(S2;(2,1),(4,1),(4,1);-1)", "flat"),
    ("sfs(S2;(2,1),(2,1),(6,1);-1)", "elliptic"),
    ("sfs(S2;(2,1),(3,1),(6,1);-1)", "flat"),
    ("sfs(S2;(2,1),(2,1),(2,1),(2,1);-2)", "flat"),
    ("sfs(S2;(2,1),(2,1),(2,1),(2,1);-1)", "Nil"),
];

/// Seifert manifolds of complexity 6 not over the sphere.
pub const SEIF_C6: &[(&str, &str)] = &[
    ("sfs(P2;(2,1),(2,1);-1)", "flat"),
    ("sfs(P2;(2,1),(2,1);0)", "Nil"),
    ("sfs(K2;;1)", "Nil"),
    ("sfs(T2;;0)", "flat"),
    ("sfs(T2;;1)", "Nil"),
];

/// The duplicate noted with the complexity-6 tables.
pub const K0_DUPLICATE: (&str, &str) = ("sfs(K2;;0)", "sfs(S2;(2,1),(2,1),(2,1),(2,1);-2)");

/// Complexity-7 Seifert manifolds other than those over the sphere with 2 or 3 fibres.
pub const SEIF_C7: &[(&str, &str)] = &[
    ("sfs(S2;(2,1),(2,1),(2,1),(2,1);0)", "Nil"),
    ("sfs(S2;(2,1),(2,1),(2,1),(3,1);-2)", "SL2"),
    ("sfs(S2;(2,1),(2,1),(2,1),(3,1);-1)", "SL2"),
    ("sfs(S2;(2,1),(2,1),(2,1),(3,2);-1)", "SL2"),
    ("sfs(P2;(2,1),(2,1);1)", "Nil"),
    ("sfs(P2;(2,1),(3,1);-1)", "SL2"),
    ("sfs(P2;(2,1),(3,1);0)", "SL2"),
    ("sfs(P2;(2,1),(3,2);0)", "SL2"),
    ("sfs(K2;;2)", "Nil"),
    ("sfs(T2;;2)", "Nil"),
];

/// Sol monodromies listed for complexities 7 and 8.
pub const SOL: &[(u64, [i64; 4])] = &[(7, [3, -1, 1, 0]), (7, [-3, 1, -1, 0]), (8, [4, -1, 1, 0]), (8, [-4, 1, -1, 0])];

/// Complexity-9 hyperbolic triples and their homology.
pub const HYP_NINE: &[(&str, &str)] = &[
    ("chain(-4,-3/2,1)", "Z_5 + Z_5"),
    ("chain(-4,1,2)", "Z_5"),
    ("chain(-5,-1/2,1)", "Z_3 + Z_6"),
    ("chain(-3/2,-3/2,1)", "Z_5 + Z_5"),
];

/// The partial complexity-10 hyperbolic list and its homology.
pub const HYP_TEN: &[(&str, &str)] = &[
    ("chain(-5,1,2)", "Z_6"),
    ("chain(-5,1/2,1)", "Z_6"),
    ("chain(-4,1,3)", "Z_10"),
    ("chain(-4,-4/3,1)", "Z_35"),
    ("chain(-4,-5/2,1)", "Z_35"),
    ("chain(-4,-5/3,1)", "Z_40"),
    ("chain(-5,-3/2,1)", "Z_30"),
    ("chain(-3/2,-1/2,1)", "Z_15"),
    ("chain(-5,-1/3,1)", "Z_2 + Z_12"),
    ("chain(-5/3,-3/2,1)", "Z_40"),
    ("chain(-5,-2/3,1)", "Z_30"),
    ("chain(-3/2,-4/3,1)", "Z_35"),
];

/// Geometry table rows for complexities 0..=9.
pub const GEOM_TABLE: &[(&str, [usize; 10])] = &[
    ("lens", [0, 2, 3, 6, 10, 20, 36, 72, 136, 272]),
    ("elliptic", [0, 0, 1, 1, 4, 11, 25, 45, 78, 142]),
    ("flat", [0, 0, 0, 0, 0, 0, 6, 0, 0, 0]),
    ("Nil", [0, 0, 0, 0, 0, 0, 7, 10, 14, 15]),
    ("H2xR", [0, 0, 0, 0, 0, 0, 0, 0, 2, 0]),
    ("SL2", [0, 0, 0, 0, 0, 0, 0, 39, 162, 514]),
    ("Sol", [0, 0, 0, 0, 0, 0, 0, 2, 2, 6]),
    ("hyperbolic", [0, 0, 0, 0, 0, 0, 0, 0, 0, 4]),
];
