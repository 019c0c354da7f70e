//! Exact ground truth on finite metric spaces.
//!
//! Everything here loops over index tables directly and shares no code with
//! the sampled checkers, so the two can be compared against each other.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::mappings::{CoupledMap, SelfMap};
use crate::metric::{FiniteSpace, IndexSet, SpaceError, SubsetPair, Which};
use crate::solver::{ContractionConstant, KQuality, ProblemError, ProblemInstance};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("subset {0:?} is empty")]
    EmptySubset(Which),
    #[error("{what} refers to point {index}, but there are only {len} points")]
    IndexOutOfRange { what: String, index: usize, len: usize },
    #[error("{0}")]
    TableShape(String),
    #[error("unknown definition {0:?}")]
    UnknownDefinition(String),
    #[error("no contraction constant below 1: {0}")]
    NotContractive(String),
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

/// A finite problem: labelled points, distances, `A`, `B`, and the tables of
/// `F` and `g`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteProblem {
    pub labels: Vec<String>,
    pub dist: Vec<Vec<f64>>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    /// `f_table[i][j]` is `F(i, j)`.
    pub f_table: Vec<Vec<usize>>,
    /// `g_table[i]` is `g(i)`.
    pub g_table: Vec<usize>,
}

impl FiniteProblem {
    pub fn new(
        labels: Vec<String>,
        dist: Vec<Vec<f64>>,
        a: Vec<usize>,
        b: Vec<usize>,
        f_table: Vec<Vec<usize>>,
        g_table: Vec<usize>,
    ) -> Result<Self, OracleError> {
        let canon = |v: Vec<usize>| v.into_iter().collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>();
        let fp = Self { labels, dist, a: canon(a), b: canon(b), f_table, g_table };
        fp.validate()?;
        Ok(fp)
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        FiniteSpace::new(self.labels.clone(), self.dist.clone())?;
        let n = self.len();
        let in_range = |what: String, i: usize| {
            if i < n {
                Ok(())
            } else {
                Err(OracleError::IndexOutOfRange { what, index: i, len: n })
            }
        };
        if self.a.is_empty() {
            return Err(OracleError::EmptySubset(Which::A));
        }
        if self.b.is_empty() {
            return Err(OracleError::EmptySubset(Which::B));
        }
        for &i in &self.a {
            in_range("A".into(), i)?;
        }
        for &i in &self.b {
            in_range("B".into(), i)?;
        }
        if self.g_table.len() != n {
            return Err(OracleError::TableShape(format!("g table has {} entries for {n} points", self.g_table.len())));
        }
        for (i, &v) in self.g_table.iter().enumerate() {
            in_range(format!("g({i})"), v)?;
        }
        if self.f_table.len() != n {
            return Err(OracleError::TableShape(format!("F table has {} rows for {n} points", self.f_table.len())));
        }
        for (i, row) in self.f_table.iter().enumerate() {
            if row.len() != n {
                return Err(OracleError::TableShape(format!("F table row {i} has {} entries for {n} points", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                in_range(format!("F({i},{j})"), v)?;
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    fn in_a(&self, i: usize) -> bool {
        self.a.binary_search(&i).is_ok()
    }

    fn in_b(&self, i: usize) -> bool {
        self.b.binary_search(&i).is_ok()
    }

    fn f(&self, i: usize, j: usize) -> usize {
        self.f_table[i][j]
    }

    fn g(&self, i: usize) -> usize {
        self.g_table[i]
    }

    /// First `p ∈ subset` with `g(p) = z`.
    fn first_preimage(&self, subset: &[usize], z: usize) -> Option<usize> {
        subset.iter().copied().find(|&p| self.g(p) == z)
    }

    pub fn g_is_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.g_table.iter().all(|v| seen.insert(*v))
    }

    pub fn space(&self) -> FiniteSpace {
        FiniteSpace::new(self.labels.clone(), self.dist.clone()).expect("validated on construction")
    }

    pub fn pair(&self) -> SubsetPair<usize> {
        SubsetPair::new(IndexSet::new(self.a.clone()), IndexSet::new(self.b.clone()))
    }

    pub fn coupled_map(&self) -> CoupledMap<usize> {
        let table = self.f_table.clone();
        CoupledMap::new("F table", move |x: &usize, y: &usize| table[*x][*y])
    }

    /// `g` with table-driven preimage oracles returning the smallest index of
    /// the subset that maps to `z`. Injectivity is declared from the table.
    pub fn self_map(&self) -> SelfMap<usize> {
        let table = self.g_table.clone();
        let (ta, tb) = (self.clone(), self.clone());
        SelfMap::new("g table", move |x: &usize| table[*x])
            .with_preimage_a(move |z: &usize| ta.first_preimage(&ta.a, *z))
            .with_preimage_b(move |z: &usize| tb.first_preimage(&tb.b, *z))
            .injective(self.g_is_injective())
    }

    /// A solver instance with the exact minimal contraction constant.
    pub fn instance(&self, name: impl Into<String>) -> Result<ProblemInstance<FiniteSpace>, OracleError> {
        let k = match minimal_k(self, Pattern::Coupled, true) {
            MinimalK::Finite(k) if k < 1.0 => k,
            other => return Err(OracleError::NotContractive(other.to_string())),
        };
        let universe = std::sync::Arc::new(IndexSet::new(0..self.len()));
        Ok(ProblemInstance::new(
            name,
            self.space(),
            self.pair(),
            self.coupled_map(),
            self.self_map(),
            ContractionConstant { value: k, quality: KQuality::Exact },
        )?
        .with_universe(universe))
    }
}

/// All `(i, j) ∈ A × B` with `F(i,j) = g(i)` and `F(j,i) = g(j)`, in
/// lexicographic order.
pub fn brute_force_coincidence_points(fp: &FiniteProblem) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &i in &fp.a {
        for &j in &fp.b {
            if fp.f(i, j) == fp.g(i) && fp.f(j, i) == fp.g(j) {
                out.push((i, j));
            }
        }
    }
    out
}

/// The properties the oracle can decide exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Definition {
    /// `d(F(x,y),F(u,v)) ≤ (k/2)[d(x,u)+d(y,v)]` on all of `X^4`.
    CoupledContraction,
    /// `g(A) ⊆ B`, `g(B) ⊆ A`.
    Cyclic,
    Coupling,
    /// Coupling plus the contraction inequality on `x,v ∈ A`, `y,u ∈ B`.
    BanachCoupling,
    /// At least one coupled coincidence point in `A × B`.
    CoincidencePoint,
    Commutativity,
    SelfCyclic,
    GCoupling,
    /// g-coupling, self-cyclic `g`, and the inequality measured through `g`.
    BanachGCoupling,
    Injectivity,
}

impl Definition {
    pub const ALL: [Definition; 10] = [
        Definition::CoupledContraction,
        Definition::Cyclic,
        Definition::Coupling,
        Definition::BanachCoupling,
        Definition::CoincidencePoint,
        Definition::Commutativity,
        Definition::SelfCyclic,
        Definition::GCoupling,
        Definition::BanachGCoupling,
        Definition::Injectivity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Definition::CoupledContraction => "coupled-contraction",
            Definition::Cyclic => "cyclic",
            Definition::Coupling => "coupling",
            Definition::BanachCoupling => "banach-coupling",
            Definition::CoincidencePoint => "coincidence-point",
            Definition::Commutativity => "commutativity",
            Definition::SelfCyclic => "self-cyclic",
            Definition::GCoupling => "g-coupling",
            Definition::BanachGCoupling => "banach-g-coupling",
            Definition::Injectivity => "injectivity",
        }
    }
}

impl fmt::Display for Definition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Definition {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Definition::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| OracleError::UnknownDefinition(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum MinimalK {
    Finite(f64),
    /// Some quadruple has zero denominator and positive numerator.
    Unbounded,
}

impl fmt::Display for MinimalK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimalK::Finite(k) => write!(f, "minimal k = {k}"),
            MinimalK::Unbounded => f.write_str("no finite k"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExactVerdict {
    pub holds: bool,
    pub minimal_k: Option<MinimalK>,
}

#[derive(Clone, Copy)]
enum Pattern {
    Coupled,
    All,
}

/// Maximum of `2·num/den` over admissible quadruples with `den > 0`.
fn minimal_k(fp: &FiniteProblem, pattern: Pattern, through_g: bool) -> MinimalK {
    let all: Vec<usize> = (0..fp.len()).collect();
    let (xs, ys, us, vs) = match pattern {
        Pattern::Coupled => (&fp.a, &fp.b, &fp.b, &fp.a),
        Pattern::All => (&all, &all, &all, &all),
    };
    let img = |p: usize| if through_g { fp.g(p) } else { p };
    let d = &fp.dist;
    let mut best = 0.0_f64;
    for &x in xs {
        for &y in ys {
            for &u in us {
                for &v in vs {
                    let num = d[fp.f(x, y)][fp.f(u, v)];
                    let den = d[img(x)][img(u)] + d[img(y)][img(v)];
                    if den == 0.0 {
                        if num > 0.0 {
                            return MinimalK::Unbounded;
                        }
                    } else {
                        best = best.max(2.0 * num / den);
                    }
                }
            }
        }
    }
    MinimalK::Finite(best)
}

fn contraction_holds(k: MinimalK) -> bool {
    matches!(k, MinimalK::Finite(v) if v < 1.0)
}

fn coupling_holds(fp: &FiniteProblem) -> bool {
    fp.a.iter().all(|&i| fp.b.iter().all(|&j| fp.in_b(fp.f(i, j)) && fp.in_a(fp.f(j, i))))
}

fn self_cyclic_holds(fp: &FiniteProblem) -> bool {
    fp.a.iter().all(|&i| fp.in_a(fp.g(i))) && fp.b.iter().all(|&j| fp.in_b(fp.g(j)))
}

fn g_coupling_holds(fp: &FiniteProblem) -> bool {
    let in_image = |subset: &[usize], z: usize| subset.iter().any(|&p| fp.g(p) == z);
    fp.a.iter().all(|&i| {
        fp.b.iter().all(|&j| {
            let (fxy, fyx) = (fp.f(i, j), fp.f(j, i));
            in_image(&fp.a, fxy) && fp.in_b(fxy) && in_image(&fp.b, fyx) && fp.in_a(fyx)
        })
    })
}

/// Decides `which` over every tuple of the finite problem.
pub fn exhaustive_definition_check(fp: &FiniteProblem, which: Definition) -> ExactVerdict {
    let n = fp.len();
    let plain = |holds| ExactVerdict { holds, minimal_k: None };
    let with_k = |holds, k| ExactVerdict { holds, minimal_k: Some(k) };
    match which {
        Definition::CoupledContraction => {
            let k = minimal_k(fp, Pattern::All, false);
            with_k(contraction_holds(k), k)
        }
        Definition::Cyclic => {
            plain(fp.a.iter().all(|&i| fp.in_b(fp.g(i))) && fp.b.iter().all(|&j| fp.in_a(fp.g(j))))
        }
        Definition::Coupling => plain(coupling_holds(fp)),
        Definition::BanachCoupling => {
            let k = minimal_k(fp, Pattern::Coupled, false);
            with_k(coupling_holds(fp) && contraction_holds(k), k)
        }
        Definition::CoincidencePoint => plain(!brute_force_coincidence_points(fp).is_empty()),
        Definition::Commutativity => {
            plain((0..n).all(|x| (0..n).all(|y| fp.g(fp.f(x, y)) == fp.f(fp.g(x), fp.g(y)))))
        }
        Definition::SelfCyclic => plain(self_cyclic_holds(fp)),
        Definition::GCoupling => plain(g_coupling_holds(fp)),
        Definition::BanachGCoupling => {
            let k = minimal_k(fp, Pattern::Coupled, true);
            with_k(g_coupling_holds(fp) && self_cyclic_holds(fp) && contraction_holds(k), k)
        }
        Definition::Injectivity => plain(fp.g_is_injective()),
    }
}

/// Pairs `(x, y) ∈ X × X` where `(gx, gy)` is a coupled fixed point of `F`
/// but `(x, y)` is not. Empty whenever `F`, `g` commute and `g` is injective.
pub fn pullback_counterexamples(fp: &FiniteProblem) -> Vec<(usize, usize)> {
    let n = fp.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let (gx, gy) = (fp.g(x), fp.g(y));
            let premise = fp.f(gx, gy) == gx && fp.f(gy, gx) == gy;
            if premise && !(fp.f(x, y) == x && fp.f(y, x) == y) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Shapes of randomly generated finite problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// Arbitrary tables.
    Unstructured,
    /// Self-cyclic `g` with a fixed point `s ∈ A ∩ B`, and `F` a g-coupling
    /// that depends on its arguments only through `g` and favours `s`.
    GCoupled,
    /// `g` a permutation and `F` built to commute with it.
    Commuting,
}

/// Random metric from integer edge weights closed under shortest paths.
fn random_metric(rng: &mut impl Rng, n: usize) -> Vec<Vec<f64>> {
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let w = rng.gen_range(1..=9) as f64;
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][m] + d[m][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

fn random_subset(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    if s.is_empty() {
        s.push(rng.gen_range(0..n));
    }
    s
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A random valid finite problem with `1..=max_points` points.
pub fn random_problem(rng: &mut impl Rng, max_points: usize, flavor: Flavor) -> FiniteProblem {
    let n = rng.gen_range(1..=max_points.max(1));
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let dist = random_metric(rng, n);
    let mut a = random_subset(rng, n);
    let mut b = random_subset(rng, n);
    let (f_table, g_table) = match flavor {
        Flavor::Unstructured => {
            let g: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
            let f = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..n)).collect()).collect();
            (f, g)
        }
        Flavor::GCoupled => {
            let s = rng.gen_range(0..n);
            a.push(s);
            b.push(s);
            a.sort_unstable();
            a.dedup();
            b.sort_unstable();
            b.dedup();
            g_coupled_tables(rng, n, &a, &b, s)
        }
        Flavor::Commuting => commuting_tables(rng, n),
    };
    FiniteProblem::new(labels, dist, a, b, f_table, g_table).expect("generator produces valid problems")
}

fn g_coupled_tables(
    rng: &mut impl Rng,
    n: usize,
    a: &[usize],
    b: &[usize],
    s: usize,
) -> (Vec<Vec<usize>>, Vec<usize>) {
    let in_a = |i: usize| a.contains(&i);
    let in_b = |i: usize| b.contains(&i);
    let mut g = vec![0; n];
    for (i, slot) in g.iter_mut().enumerate() {
        let allowed: Vec<usize> = (0..n)
            .filter(|&t| (!in_a(i) || in_a(t)) && (!in_b(i) || in_b(t)))
            .collect();
        *slot = if i == s { s } else { *allowed.choose(rng).expect("s is always allowed") };
    }
    let ga: BTreeSet<usize> = a.iter().map(|&i| g[i]).collect();
    let gb: BTreeSet<usize> = b.iter().map(|&i| g[i]).collect();
    // F(i,j) is a function of (g(i), g(j)); one value per image pair.
    let mut by_images = std::collections::BTreeMap::new();
    let mut f = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let key = (g[i], g[j]);
            let allowed: Vec<usize> = (0..n)
                .filter(|&t| {
                    let fwd = !(in_a(i) && in_b(j)) || (ga.contains(&t) && in_b(t));
                    let rev = !(in_a(j) && in_b(i)) || (gb.contains(&t) && in_a(t));
                    fwd && rev
                })
                .collect();
            let chosen = by_images.get(&key).copied().filter(|t| allowed.contains(t)).unwrap_or_else(|| {
                if rng.gen_bool(0.6) {
                    s
                } else {
                    *allowed.choose(rng).expect("s is always allowed")
                }
            });
            by_images.entry(key).or_insert(chosen);
            f[i][j] = chosen;
        }
    }
    (f, g)
}

fn commuting_tables(rng: &mut impl Rng, n: usize) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut g: Vec<usize> = (0..n).collect();
    g.shuffle(rng);
    let cycle_len = |start: usize| {
        let mut len = 1;
        let mut p = g[start];
        while p != start {
            p = g[p];
            len += 1;
        }
        len
    };
    let cyc: Vec<usize> = (0..n).map(cycle_len).collect();
    let mut f: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    for x in 0..n {
        for y in 0..n {
            if f[x][y].is_some() {
                continue;
            }
            let period = cyc[x] / gcd(cyc[x], cyc[y]) * cyc[y];
            // F(g^t x, g^t y) = g^t F(x, y) needs the value's cycle length to divide the period.
            let candidates: Vec<usize> = (0..n).filter(|&z| period % cyc[z] == 0).collect();
            let mut value = if rng.gen_bool(0.5) { x } else { *candidates.choose(rng).expect("x qualifies") };
            let (mut px, mut py) = (x, y);
            for _ in 0..period {
                f[px][py] = Some(value);
                px = g[px];
                py = g[py];
                value = g[value];
            }
        }
    }
    let f = f.into_iter().map(|row| row.into_iter().map(|v| v.expect("every orbit assigned")).collect()).collect();
    (f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Grid {0, 1, 2} on the line with F(i,j) = round((i+j)/10) = 0 and
    /// g(i) = round(i/2), rounding half to even.
    fn grid_example() -> FiniteProblem {
        let labels = vec!["0".into(), "1".into(), "2".into()];
        let dist = vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.0], vec![2.0, 1.0, 0.0]];
        let g: Vec<usize> = (0..3).map(|i| (i as f64 / 2.0).round_ties_even() as usize).collect();
        assert_eq!(g, vec![0, 0, 1]);
        let f: Vec<Vec<usize>> =
            (0..3).map(|i| (0..3).map(|j| ((i + j) as f64 / 10.0).round_ties_even() as usize).collect()).collect();
        FiniteProblem::new(labels, dist, vec![0, 1, 2], vec![0, 1, 2], f, g).unwrap()
    }

    #[test]
    fn single_point_collapses() {
        let fp = FiniteProblem::new(vec!["o".into()], vec![vec![0.0]], vec![0], vec![0], vec![vec![0]], vec![0]).unwrap();
        assert_eq!(brute_force_coincidence_points(&fp), vec![(0, 0)]);
    }

    #[test]
    fn grid_discretization_coincidences() {
        // F ≡ 0, so coincidence needs g(i) = 0 = g(j).
        let fp = grid_example();
        assert!(fp.f_table.iter().flatten().all(|&v| v == 0));
        assert_eq!(brute_force_coincidence_points(&fp), vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
    }

    #[test]
    fn identity_g_is_self_cyclic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let mut fp = random_problem(&mut rng, 6, Flavor::Unstructured);
            fp.g_table = (0..fp.len()).collect();
            assert!(exhaustive_definition_check(&fp, Definition::SelfCyclic).holds);
            assert!(exhaustive_definition_check(&fp, Definition::Injectivity).holds);
        }
    }

    #[test]
    fn constant_f_into_intersection_has_zero_k() {
        // A = {0, 1}, B = {1, 2}, g = identity, F ≡ 1 ∈ g(A) ∩ B ∩ g(B) ∩ A.
        let dist = vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.0], vec![2.0, 1.0, 0.0]];
        let fp = FiniteProblem::new(
            vec!["a".into(), "b".into(), "c".into()],
            dist,
            vec![0, 1],
            vec![1, 2],
            vec![vec![1; 3]; 3],
            vec![0, 1, 2],
        )
        .unwrap();
        assert!(exhaustive_definition_check(&fp, Definition::GCoupling).holds);
        let v = exhaustive_definition_check(&fp, Definition::BanachGCoupling);
        assert!(v.holds);
        assert_eq!(v.minimal_k, Some(MinimalK::Finite(0.0)));
    }

    #[test]
    fn zero_denominator_is_unbounded() {
        let mut fp = grid_example();
        fp.g_table = vec![1, 1, 1];
        fp.f_table[0][0] = 2;
        assert_eq!(
            exhaustive_definition_check(&fp, Definition::BanachGCoupling).minimal_k,
            Some(MinimalK::Unbounded)
        );
    }

    #[test]
    fn validation_rejects_bad_tables() {
        let mut fp = grid_example();
        fp.f_table[1][2] = 7;
        assert!(matches!(fp.validate(), Err(OracleError::IndexOutOfRange { index: 7, .. })));
        let fp = FiniteProblem::new(
            vec!["a".into()],
            vec![vec![0.0]],
            vec![],
            vec![0],
            vec![vec![0]],
            vec![0],
        );
        assert_eq!(fp.unwrap_err(), OracleError::EmptySubset(Which::A));
    }

    #[test]
    fn generated_problems_have_requested_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let fp = random_problem(&mut rng, 8, Flavor::GCoupled);
            assert!(exhaustive_definition_check(&fp, Definition::GCoupling).holds);
            assert!(exhaustive_definition_check(&fp, Definition::SelfCyclic).holds);
            let fp = random_problem(&mut rng, 8, Flavor::Commuting);
            assert!(exhaustive_definition_check(&fp, Definition::Commutativity).holds);
            assert!(exhaustive_definition_check(&fp, Definition::Injectivity).holds);
            assert!(pullback_counterexamples(&fp).is_empty());
        }
    }

    #[test]
    fn strong_pairs_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let fp = random_problem(&mut rng, 8, Flavor::GCoupled);
            for (i, j) in brute_force_coincidence_points(&fp) {
                if i == j {
                    assert_eq!(fp.f(i, i), fp.g(i));
                }
            }
        }
    }

    #[test]
    fn definition_names_round_trip() {
        for d in Definition::ALL {
            assert_eq!(d.name().parse::<Definition>().unwrap(), d);
        }
        assert!("bogus".parse::<Definition>().is_err());
    }
}
