//! Generating series `L_D = z^(1-r) Σ α_n z^n` and `F_D = y^(-w) L_D`.

use crate::diagram::{Diagram, Orientation, SpliceKind};
use crate::engine::{CoeffTable, Engine};
use crate::error::Result;
pub use crate::laurent::d_const;
use crate::laurent::{BivariatePoly, LaurentPoly};

pub fn series_from_table(t: &CoeffTable, r: usize) -> Result<BivariatePoly> {
    let mut out = BivariatePoly::zero();
    for (n, p) in t.iter() {
        out = out.checked_add(&p.to_bivariate((n + 1 - r as i64) as i32))?;
    }
    Ok(out)
}

/// `[z^(n+1-r)] L`, i.e. `α_n` read back off the series.
pub fn coefficient(l: &BivariatePoly, r: usize, n: i64) -> LaurentPoly {
    l.z_coeff((n + 1 - r as i64) as i32)
}

pub fn l_of(engine: &Engine, d: &Diagram) -> Result<BivariatePoly> {
    series_from_table(&engine.alpha_table(d)?, d.r())
}

pub fn f_of(engine: &Engine, d: &Diagram, o: &Orientation) -> Result<BivariatePoly> {
    let w = d.writhe(o)?;
    l_of(engine, d)?.shift_y(-w)
}

/// `L_{D+} + L_{D-} == z (L_{D∞} + L_{D0})` at crossing `p`.
pub fn check_l_skein(engine: &Engine, d: &Diagram, p: usize) -> Result<bool> {
    let lhs = l_of(engine, d)?.checked_add(&l_of(engine, &d.crossing_change(p)?)?)?;
    let a = l_of(engine, &d.splice(p, SpliceKind::A)?)?;
    let b = l_of(engine, &d.splice(p, SpliceKind::B)?)?;
    let rhs = a.checked_add(&b)?.shift_z(1)?;
    Ok(lhs == rhs)
}

#[derive(Debug, Clone)]
pub struct ProductReport {
    /// Number of (edge, edge, band side) choices tried for the connected sum.
    pub sums_checked: usize,
    /// First failing connected sum as `(e, e2, reverse)`.
    pub sum_failure: Option<(usize, usize, bool)>,
    pub union_holds: bool,
}

impl ProductReport {
    pub fn holds(&self) -> bool {
        self.sum_failure.is_none() && self.union_holds
    }
}

/// `L_{D#D2} == L_D L_{D2}` for every pair of summing edges and both band
/// sides, and `L_{D⊔D2} == d L_D L_{D2}`.
pub fn check_product_laws(engine: &Engine, d: &Diagram, d2: &Diagram) -> Result<ProductReport> {
    let l1 = l_of(engine, d)?;
    let l2 = l_of(engine, d2)?;
    let product = l1.checked_mul(&l2)?;
    let mut sums_checked = 0;
    let mut sum_failure = None;
    'outer: for e in 0..d.edges().len() {
        for e2 in 0..d2.edges().len() {
            for reverse in [false, true] {
                let sum = d.connected_sum_with(d2, e, e2, reverse)?;
                sums_checked += 1;
                if l_of(engine, &sum)? != product {
                    sum_failure = Some((e, e2, reverse));
                    break 'outer;
                }
            }
        }
    }
    let union = l_of(engine, &d.disjoint_union(d2))?;
    let union_holds = union == d_const().checked_mul(&product)?;
    Ok(ProductReport {
        sums_checked,
        sum_failure,
        union_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(s: &str) -> BivariatePoly {
        s.parse().unwrap()
    }

    #[test]
    fn l_examples() {
        let e = Engine::new();
        assert_eq!(l_of(&e, &Diagram::unknot()).unwrap(), BivariatePoly::one());
        assert_eq!(l_of(&e, &Diagram::unlink(2)).unwrap(), d_const());
        let k = Diagram::parse_pd("X(1,2,2,1)").unwrap();
        let w = k.writhe(&Orientation::canonical(1)).unwrap();
        assert_eq!(l_of(&e, &k).unwrap(), BivariatePoly::y_pow(w));
        assert_eq!(
            f_of(&e, &k, &Orientation(vec![true])).unwrap(),
            BivariatePoly::one()
        );
    }

    #[test]
    fn unlink_f_is_power_of_d() {
        let e = Engine::new();
        for r in 1..=6u32 {
            let d = Diagram::unlink(r);
            let o = Orientation::canonical(r as usize);
            assert_eq!(
                f_of(&e, &d, &o).unwrap(),
                d_const().checked_pow(r - 1).unwrap()
            );
        }
    }

    #[test]
    fn d_const_identities() {
        let e = Engine::new();
        let o = l_of(&e, &Diagram::unknot()).unwrap();
        assert_eq!(&d_const() * &o, l_of(&e, &Diagram::unlink(2)).unwrap());
        assert_eq!(
            &(&d_const() * &BivariatePoly::z()) + &BivariatePoly::z(),
            bp("y + y^-1")
        );
    }

    #[test]
    fn product_laws_small() {
        let e = Engine::new();
        let o = Diagram::unknot();
        assert!(check_product_laws(&e, &o, &o).unwrap().holds());
        let k = Diagram::parse_pd("X(1,2,2,1)").unwrap();
        let kk = k.connected_sum(&k, 0, 0).unwrap();
        let w = k.writhe(&Orientation::canonical(1)).unwrap();
        assert_eq!(l_of(&e, &kk).unwrap(), BivariatePoly::y_pow(2 * w));
        let rep = check_product_laws(&e, &k, &k).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.sums_checked, 8);
    }

    #[test]
    fn coefficient_extraction() {
        let e = Engine::new();
        let h = Diagram::parse_pd("X(1,4,2,3) X(3,2,4,1)").unwrap();
        let t = e.alpha_table(&h).unwrap();
        let l = l_of(&e, &h).unwrap();
        for n in -2..6 {
            assert_eq!(coefficient(&l, 2, n), t.get(n));
        }
    }

    #[test]
    fn l_skein_hopf() {
        let e = Engine::new();
        let h = Diagram::parse_pd("X(1,4,2,3) X(3,2,4,1)").unwrap();
        assert!(check_l_skein(&e, &h, 0).unwrap());
        assert!(check_l_skein(&e, &h, 1).unwrap());
        let k = Diagram::parse_pd("X(1,2,2,1)").unwrap();
        assert!(check_l_skein(&e, &k, 0).unwrap());
    }
}
