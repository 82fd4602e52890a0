//! The coefficient polynomials `α_n(D; y)`, computed by induction on
//! `(crossings, warping degree)`.
//!
//! A monotone diagram gets the closed form
//! `α_n = y^w (-1)^n C(r-1, n) (y + y^-1)^(r-n-1)`. Otherwise, at a warping
//! crossing `p`,
//!
//! ```text
//! α_n(D) = -α_n(D with p changed) + α_{n+Δ_A-1}(D_A) + α_{n+Δ_B-1}(D_B)
//! ```
//!
//! where `D_A`, `D_B` are the two splices at `p` and `Δ_*` the change in the
//! number of components they cause.

use std::collections::BTreeMap;

use log::trace;

use crate::diagram::{Components, Diagram, SpliceKind};
use crate::error::{Error, Result};
use crate::laurent::{pow_binom, LaurentPoly};
use crate::memo::{Budget, Cache, DEFAULT_BUDGET};
use crate::warping::{canonical_base_with, first_encounter_order, BaseSequence};

/// Nonzero coefficient polynomials by index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoeffTable {
    entries: BTreeMap<i64, LaurentPoly>,
}

impl CoeffTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries<I: IntoIterator<Item = (i64, LaurentPoly)>>(it: I) -> Self {
        let mut t = Self::new();
        for (n, p) in it {
            if !p.is_zero() {
                t.entries.insert(n, p);
            }
        }
        t
    }

    /// Closed form for a monotone diagram with writhe `w` and `r` components.
    pub fn monotone(w: i32, r: usize) -> Result<Self> {
        let r = r as u32;
        let mut t = Self::new();
        for n in 0..r as i64 {
            t.entries.insert(n, pow_binom(w, n, r)?);
        }
        Ok(t)
    }

    /// `α_n`; zero outside the support.
    pub fn get(&self, n: i64) -> LaurentPoly {
        self.entries.get(&n).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &LaurentPoly)> {
        self.entries.iter().map(|(&n, p)| (n, p))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support_bounds(&self) -> Option<(i64, i64)> {
        Some((
            *self.entries.keys().next()?,
            *self.entries.keys().next_back()?,
        ))
    }

    /// `self[n] += sign * other[n + offset]` for every `n`.
    pub fn add_shifted(&mut self, other: &CoeffTable, offset: i64, negate: bool) -> Result<()> {
        for (&k, p) in &other.entries {
            let n = k - offset;
            let term = if negate { p.checked_neg()? } else { p.clone() };
            let sum = match self.entries.get(&n) {
                Some(cur) => cur.checked_add(&term)?,
                None => term,
            };
            if sum.is_zero() {
                self.entries.remove(&n);
            } else {
                self.entries.insert(n, sum);
            }
        }
        Ok(())
    }

    pub fn scale_y(&self, k: i32) -> Result<Self> {
        let mut t = Self::new();
        for (&n, p) in &self.entries {
            t.entries.insert(n, p.checked_shift(k)?);
        }
        Ok(t)
    }

    /// `(index, text)` pairs in index order.
    pub fn to_strings(&self) -> Vec<(String, String)> {
        self.entries
            .iter()
            .map(|(n, p)| (n.to_string(), p.to_string()))
            .collect()
    }
}

/// Both sides of the coefficient skein identity at one crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeinReport {
    pub crossing: usize,
    pub lhs: CoeffTable,
    pub rhs: CoeffTable,
}

impl SkeinReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    /// First index where the two sides differ.
    pub fn first_mismatch(&self) -> Option<(i64, LaurentPoly, LaurentPoly)> {
        let mut idx: Vec<i64> = self
            .lhs
            .iter()
            .chain(self.rhs.iter())
            .map(|(n, _)| n)
            .collect();
        idx.sort_unstable();
        idx.dedup();
        idx.into_iter()
            .map(|n| (n, self.lhs.get(n), self.rhs.get(n)))
            .find(|(_, l, r)| l != r)
    }
}

pub struct Engine {
    budget: u64,
    cache: Option<Cache<CoeffTable>>,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    /// Cache-free engine with the default node budget.
    pub fn new() -> Self {
        Engine {
            budget: DEFAULT_BUDGET,
            cache: None,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Reuse tables of diagrams that agree up to relabeling.
    pub fn memoized(mut self) -> Self {
        self.cache = Some(Cache::new());
        self
    }

    pub fn is_memoized(&self) -> bool {
        self.cache.is_some()
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn cache_len(&self) -> usize {
        self.cache.as_ref().map_or(0, |c| c.len())
    }

    pub fn alpha_table(&self, d: &Diagram) -> Result<CoeffTable> {
        let budget = Budget::new(self.budget);
        self.table(d, &budget)
    }

    /// Number of recursion nodes visited computing `d`'s table.
    pub fn node_count(&self, d: &Diagram) -> Result<u64> {
        let budget = Budget::new(self.budget);
        self.table(d, &budget)?;
        Ok(budget.used())
    }

    /// Same recursion, seeded with `a`. Crossing changes keep `a`; spliced
    /// diagrams are computed with their own canonical bases.
    pub fn alpha_table_with_base(&self, d: &Diagram, a: &BaseSequence) -> Result<CoeffTable> {
        let comps = d.components();
        a.validate(d, &comps)?;
        let budget = Budget::new(self.budget);
        budget.tick(d)?;
        self.expand(d, &comps, a, None, false, &budget)
    }

    /// Expands first at the warping crossing `p` of `(d, a)`.
    pub fn alpha_table_at(&self, d: &Diagram, a: &BaseSequence, p: usize) -> Result<CoeffTable> {
        let comps = d.components();
        a.validate(d, &comps)?;
        if !first_encounter_order(d, a).warping(d).contains(&p) {
            return Err(Error::NotWarping(p));
        }
        let budget = Budget::new(self.budget);
        budget.tick(d)?;
        self.expand(d, &comps, a, Some(p), false, &budget)
    }

    /// `α_n(D) + α_n(D') == α_{n+Δ_A-1}(D_A) + α_{n+Δ_B-1}(D_B)` at `p`.
    pub fn skein_check(&self, d: &Diagram, p: usize) -> Result<SkeinReport> {
        let cc = d.crossing_change(p)?;
        let a = d.splice(p, SpliceKind::A)?;
        let b = d.splice(p, SpliceKind::B)?;
        let r = d.r() as i64;
        let mut lhs = self.alpha_table(d)?;
        lhs.add_shifted(&self.alpha_table(&cc)?, 0, false)?;
        let mut rhs = CoeffTable::new();
        rhs.add_shifted(&self.alpha_table(&a)?, a.r() as i64 - r - 1, false)?;
        rhs.add_shifted(&self.alpha_table(&b)?, b.r() as i64 - r - 1, false)?;
        Ok(SkeinReport {
            crossing: p,
            lhs,
            rhs,
        })
    }

    fn table(&self, d: &Diagram, budget: &Budget) -> Result<CoeffTable> {
        budget.tick(d)?;
        let key = self.cache.as_ref().map(|_| Cache::<CoeffTable>::key(d));
        if let (Some(cache), Some(key)) = (&self.cache, &key) {
            if let Some(t) = cache.get(key) {
                return Ok(t);
            }
        }
        let comps = d.components();
        let base = canonical_base_with(&comps);
        let t = self.expand(d, &comps, &base, None, true, budget)?;
        Ok(match (&self.cache, key) {
            (Some(cache), Some(key)) => cache.insert(key, t),
            _ => t,
        })
    }

    fn expand(
        &self,
        d: &Diagram,
        comps: &Components,
        base: &BaseSequence,
        forced: Option<usize>,
        canonical: bool,
        budget: &Budget,
    ) -> Result<CoeffTable> {
        let p = match forced {
            Some(p) => p,
            None => match first_encounter_order(d, base).warping(d).first() {
                Some(&p) => p,
                None => return monotone_table(d, comps, base),
            },
        };
        let cc = d.crossing_change(p)?;
        let t_cc = if canonical {
            self.table(&cc, budget)?
        } else {
            budget.tick(&cc)?;
            self.expand(&cc, comps, base, None, false, budget)?
        };
        let r = comps.count() as i64;
        let mut out = CoeffTable::new();
        out.add_shifted(&t_cc, 0, true)?;
        for kind in [SpliceKind::A, SpliceKind::B] {
            let s = d.splice(p, kind)?;
            let delta = s.r() as i64 - r;
            out.add_shifted(&self.table(&s, budget)?, delta - 1, false)?;
        }
        Ok(out)
    }
}

fn monotone_table(d: &Diagram, comps: &Components, base: &BaseSequence) -> Result<CoeffTable> {
    let w = d.writhe_with(comps, &base.orientation(comps));
    if log::log_enabled!(log::Level::Trace) && d.c() > 0 {
        let pieces = d.pieces().len();
        if pieces > 1 || d.free_loops() > 0 {
            trace!(
                "monotone base case is split: c={} pieces={} free_loops={}",
                d.c(),
                pieces,
                d.free_loops()
            );
        }
    }
    CoeffTable::monotone(w, comps.count())
}

/// `α_n(D)` with a cache-free default engine.
pub fn alpha_table(d: &Diagram) -> Result<CoeffTable> {
    Engine::new().alpha_table(d)
}

pub fn alpha_table_with_base(d: &Diagram, a: &BaseSequence) -> Result<CoeffTable> {
    Engine::new().alpha_table_with_base(d, a)
}

pub fn skein_check(d: &Diagram, p: usize) -> Result<SkeinReport> {
    Engine::new().skein_check(d, p)
}

pub fn support_bounds(t: &CoeffTable) -> Option<(i64, i64)> {
    t.support_bounds()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::binomial;
    use crate::warping::enumerate_bases;

    fn pd(s: &str) -> Diagram {
        Diagram::parse_pd(s).unwrap()
    }

    fn y_plus_inv_pow(k: u32) -> LaurentPoly {
        // binomial expansion, independent of pow_binom
        LaurentPoly::from_terms((0..=k).map(|i| (k as i32 - 2 * i as i32, binomial(k, i).unwrap())))
            .unwrap()
    }

    #[test]
    fn unknot_and_unlink() {
        let t = alpha_table(&Diagram::unknot()).unwrap();
        assert_eq!(t, CoeffTable::from_entries([(0, LaurentPoly::one())]));
        assert_eq!(t.support_bounds(), Some((0, 0)));
        let t2 = alpha_table(&Diagram::unlink(2)).unwrap();
        assert_eq!(
            t2,
            CoeffTable::from_entries([
                (0, LaurentPoly::y_plus_inv()),
                (1, LaurentPoly::constant(-1))
            ])
        );
        for r in 1..=8u32 {
            let t = alpha_table(&Diagram::unlink(r)).unwrap();
            assert_eq!(t.support_bounds(), Some((0, r as i64 - 1)));
            for n in 0..r {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                let expected = y_plus_inv_pow(r - n - 1)
                    .checked_scale(sign * binomial(r - 1, n).unwrap())
                    .unwrap();
                assert_eq!(t.get(n as i64), expected);
            }
        }
    }

    #[test]
    fn kinks_scale_by_y() {
        let k = pd("X(1,2,2,1)");
        let w = k
            .writhe(&crate::diagram::Orientation::canonical(1))
            .unwrap();
        let t = alpha_table(&k).unwrap();
        assert_eq!(t, CoeffTable::from_entries([(0, LaurentPoly::y_pow(w))]));
        let t = alpha_table(&k.mirror()).unwrap();
        assert_eq!(t, CoeffTable::from_entries([(0, LaurentPoly::y_pow(-w))]));
    }

    #[test]
    fn kink_skein_sides() {
        let k = pd("X(1,2,2,1)");
        let rep = skein_check(&k, 0).unwrap();
        assert!(rep.holds());
        assert_eq!(
            rep.lhs,
            CoeffTable::from_entries([(0, LaurentPoly::y_plus_inv())])
        );
    }

    #[test]
    fn skein_holds_on_small_diagrams() {
        for s in [
            "X(1,4,2,3) X(3,2,4,1)",
            "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)",
            "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)",
        ] {
            let d = pd(s);
            for p in 0..d.c() {
                let rep = skein_check(&d, p).unwrap();
                assert!(rep.holds(), "{s} at {p}: {:?}", rep.first_mismatch());
            }
        }
    }

    #[test]
    fn base_independence_kink_and_hopf() {
        for s in [
            "X(1,2,2,1)",
            "X(1,4,2,3) X(3,2,4,1)",
            "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)",
        ] {
            let d = pd(s);
            let reference = alpha_table(&d).unwrap();
            for a in crate::warping::enumerate_bases_permuted(&d) {
                assert_eq!(
                    alpha_table_with_base(&d, &a).unwrap(),
                    reference,
                    "{s} {a:?}"
                );
            }
        }
    }

    #[test]
    fn warping_crossing_independence() {
        let d = pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)");
        let reference = alpha_table(&d).unwrap();
        let e = Engine::new();
        for a in enumerate_bases(&d) {
            for p in crate::warping::warping_set(&d, &a) {
                assert_eq!(e.alpha_table_at(&d, &a, p).unwrap(), reference);
            }
        }
        let a = crate::warping::canonical_base(&d);
        let ws = crate::warping::warping_set(&d, &a);
        let non = (0..d.c()).find(|p| !ws.contains(p)).unwrap();
        assert_eq!(e.alpha_table_at(&d, &a, non), Err(Error::NotWarping(non)));
    }

    #[test]
    fn cache_agrees_with_reference() {
        let d = pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
        let dd = d.connected_sum(&d.mirror(), 0, 2).unwrap();
        let plain = Engine::new();
        let memo = Engine::new().memoized();
        assert_eq!(
            memo.alpha_table(&dd).unwrap(),
            plain.alpha_table(&dd).unwrap()
        );
        assert!(memo.cache_len() > 0);
        assert!(memo.node_count(&dd).unwrap() < plain.node_count(&dd).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let d = pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
        let e = Engine::new().with_budget(3);
        match e.alpha_table(&d) {
            Err(Error::Budget { limit: 3, .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
