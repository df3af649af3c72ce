//! Local invariants of End⁰(A) ⊗ Q for the simple abelian variety attached
//! to a Weil number: Newton polygon over Q_p, residual polynomials for the
//! splitting of each segment, and the invariant inv_v = (v(π)/v(q))·[F_v:Q_p].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::factor::fp_degree_pattern;
use super::weil::WeilNumber;
use crate::albert::SchurIndex;
use crate::crossed::{half, mod_one, AlbertType};
use crate::exactnum::arith::lcm;
use crate::exactnum::{fmt_rat, Rat};

/// One side of the Newton polygon of P over Q_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonSegment {
    /// Start index of the segment.
    pub start: usize,
    /// Number of roots on this segment.
    pub length: usize,
    /// p-adic valuation of each root on this segment.
    pub slope: Rat,
}

/// Lower convex hull of (i, v_p(a_i)) for a polynomial with nonzero
/// constant term.
pub fn newton_polygon(coeffs: &[BigInt], p: u64) -> Vec<NewtonSegment> {
    let pts: Vec<(usize, i64)> =
        coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, valuation(c, p) as i64)).collect();
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // drop the middle point when it lies on or above the chord
            let cross = (x2 as i64 - x1 as i64) * (pt.1 - y1) - (y2 - y1) * (pt.0 as i64 - x1 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2)
        .map(|w| {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            let len = x1 - x0;
            NewtonSegment { start: x0, length: len, slope: Rat::new((y0 - y1).into(), (len as i64).into()) }
        })
        .collect()
}

fn valuation(c: &BigInt, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let mut x = c.abs();
    let mut v = 0;
    while !x.is_zero() && (&x % &pb).is_zero() {
        x /= &pb;
        v += 1;
    }
    v
}

/// Residual polynomial of a segment with slope h/e, over F_p.
pub fn residual_polynomial(coeffs: &[BigInt], p: u64, seg: &NewtonSegment) -> Vec<u64> {
    let h = seg.slope.numer().to_i64().unwrap();
    let e = seg.slope.denom().to_usize().unwrap();
    let v0 = valuation(&coeffs[seg.start], p) as i64;
    let pb = BigInt::from(p);
    (0..=seg.length / e)
        .map(|j| {
            let i = seg.start + j * e;
            let c = &coeffs[i];
            let target = v0 - j as i64 * h;
            if c.is_zero() || valuation(c, p) as i64 != target {
                0
            } else {
                let unit = c / pb.pow(target as u32);
                unit.mod_floor(&pb).to_u64().unwrap()
            }
        })
        .collect()
}

/// A place of Q(π) over p, or a block of places that could not be separated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TatePlace {
    pub slope: Rat,
    /// Local degree, or total degree of the block when aggregated.
    pub local_degree: u64,
    pub ramification_index: u64,
    /// Invariant, or the sum of the invariants of the block when aggregated.
    pub value: Rat,
    pub aggregated: bool,
}

impl Serialize for TatePlace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TatePlace", 5)?;
        st.serialize_field("slope", &fmt_rat(&self.slope))?;
        st.serialize_field("local_degree", &self.local_degree)?;
        st.serialize_field("ramification_index", &self.ramification_index)?;
        st.serialize_field("value", &fmt_rat(&self.value))?;
        st.serialize_field("aggregated", &self.aggregated)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Ordinary,
    Supersingular,
    Other,
}

/// End⁰(A) for the isogeny class of a Weil number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndAlgebraReport {
    pub p: u64,
    pub n: u32,
    pub poly: String,
    pub center_degree: u64,
    pub real_places: usize,
    pub invariants_over_p: Vec<TatePlace>,
    pub index: SchurIndex,
    pub albert_type: AlbertType,
    pub classification: Classification,
}

impl EndAlgebraReport {
    /// d·[Q(π):Q] as bounds.
    pub fn deg_d(&self) -> (u64, u64) {
        (self.index.lo() * self.center_degree, self.index.hi() * self.center_degree)
    }

    /// dim A = deg D / 2, as bounds.
    pub fn dim_a(&self) -> (u64, u64) {
        let (lo, hi) = self.deg_d();
        (lo / 2, hi / 2)
    }

    /// Sum of all invariants, real places included, in Q/Z.
    pub fn invariant_sum(&self) -> Rat {
        let real = half() * Rat::from_integer(self.real_places.into());
        mod_one(&self.invariants_over_p.iter().fold(real, |acc, pl| acc + &pl.value))
    }

    pub fn is_aggregated(&self) -> bool {
        self.invariants_over_p.iter().any(|pl| pl.aggregated)
    }
}

impl Serialize for EndAlgebraReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let bounded = |(lo, hi): (u64, u64)| {
            if lo == hi {
                serde_json::json!(lo)
            } else {
                serde_json::json!({ "lo": lo, "hi": hi })
            }
        };
        let mut st = s.serialize_struct("EndAlgebraReport", 13)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("poly", &self.poly)?;
        st.serialize_field("center_degree", &self.center_degree)?;
        st.serialize_field("real_places", &self.real_places)?;
        st.serialize_field("invariants_over_p", &self.invariants_over_p)?;
        st.serialize_field("real_invariant", &(self.real_places > 0).then(|| fmt_rat(&half())))?;
        st.serialize_field("index", &self.index)?;
        st.serialize_field("deg_D", &bounded(self.deg_d()))?;
        st.serialize_field("dim_A", &bounded(self.dim_a()))?;
        st.serialize_field("albert_type", &self.albert_type)?;
        st.serialize_field("classification", &self.classification)?;
        st.serialize_field("invariant_sum", &fmt_rat(&self.invariant_sum()))?;
        st.end()
    }
}

fn order(r: &Rat) -> u64 {
    mod_one(r).denom().to_u64().unwrap()
}

/// Tate's description of End⁰(A) for the Weil number `w`.
pub fn tate_report(w: &WeilNumber) -> EndAlgebraReport {
    let coeffs = w.poly.coeffs();
    let p = w.p;
    let n = Rat::from_integer(w.n.into());
    let segments = newton_polygon(coeffs, p);
    let mut places = Vec::new();
    let mut lo = 1u64;
    let mut hi = 1u64;
    for seg in &segments {
        let e = seg.slope.denom().to_u64().unwrap();
        let h = Rat::from_integer(seg.slope.numer().clone());
        let residual = residual_polynomial(coeffs, p, seg);
        // inv_v = (h/e)/n · e·f = h·f/n
        let inv = |f: u64| mod_one(&(&h * Rat::from_integer(f.into()) / &n));
        match fp_degree_pattern(&residual, p) {
            Some(fs) => {
                for f in fs {
                    let value = inv(f as u64);
                    lo = lcm(lo, order(&value));
                    hi = lcm(hi, order(&value));
                    places.push(TatePlace {
                        slope: seg.slope.clone(),
                        local_degree: e * f as u64,
                        ramification_index: e,
                        value,
                        aggregated: false,
                    });
                }
            }
            None => {
                let total_f = seg.length as u64 / e;
                let value = inv(total_f);
                lo = lcm(lo, order(&value));
                hi = (1..=total_f).fold(hi, |acc, f| lcm(acc, order(&inv(f))));
                places.push(TatePlace {
                    slope: seg.slope.clone(),
                    local_degree: seg.length as u64,
                    ramification_index: e,
                    value,
                    aggregated: true,
                });
            }
        }
    }
    let real_places = w.poly.to_q().count_real_roots(None, None);
    if real_places > 0 {
        lo = lcm(lo, 2);
        hi = lcm(hi, 2);
    }
    let index = if lo == hi { SchurIndex::Exact(lo) } else { SchurIndex::Bounded { lo, hi } };
    let albert_type = if real_places > 0 { AlbertType::III } else { AlbertType::IV };
    let half_n = &n / Rat::from_integer(2.into());
    let classification = if segments.iter().all(|s| s.slope == half_n) {
        Classification::Supersingular
    } else if segments.iter().all(|s| s.slope.is_zero() || s.slope == n) {
        Classification::Ordinary
    } else {
        Classification::Other
    };
    EndAlgebraReport {
        p,
        n: w.n,
        poly: w.poly.to_string(),
        center_degree: w.poly.degree() as u64,
        real_places,
        invariants_over_p: places,
        index,
        albert_type,
        classification,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hondatate::IntPoly;

    fn report(s: &str, p: u64, n: u32) -> EndAlgebraReport {
        tate_report(&WeilNumber::new(IntPoly::parse(s).unwrap(), p, n).unwrap())
    }

    #[test]
    fn supersingular_line() {
        for p in [2u64, 3, 5, 7] {
            let r = report(&format!("x-{p}"), p, 2);
            assert_eq!(r.index, SchurIndex::Exact(2));
            assert_eq!(r.dim_a(), (1, 1));
            assert_eq!(r.albert_type, AlbertType::III);
            assert_eq!(fmt_rat(&r.invariants_over_p[0].value), "1/2");
            assert!(r.invariant_sum().is_zero());
        }
    }

    #[test]
    fn ordinary_elliptic() {
        let r = report("x^2-x+5", 5, 1);
        assert_eq!(r.invariants_over_p.len(), 2);
        assert_eq!(r.index, SchurIndex::Exact(1));
        assert_eq!(r.dim_a(), (1, 1));
        assert_eq!(r.classification, Classification::Ordinary);
    }

    #[test]
    fn ramified_cm() {
        let r = report("x^2+7", 7, 1);
        assert_eq!(r.invariants_over_p.len(), 1);
        assert_eq!(r.invariants_over_p[0].local_degree, 2);
        assert_eq!(r.index, SchurIndex::Exact(1));
        assert_eq!(r.classification, Classification::Supersingular);
    }

    #[test]
    fn real_quadratic() {
        let r = report("x^2-3", 3, 1);
        assert_eq!(r.real_places, 2);
        assert_eq!(r.dim_a(), (2, 2));
        assert!(r.invariant_sum().is_zero());
    }

    #[test]
    fn polygon() {
        let c: Vec<BigInt> = [4, 2, 1, 1, 1].iter().map(|&x| BigInt::from(x)).collect();
        let segs = newton_polygon(&c, 2);
        let slopes: Vec<String> = segs.iter().map(|s| fmt_rat(&s.slope)).collect();
        assert_eq!(slopes, vec!["1", "0"]);
        assert_eq!(segs[0].length, 2);
    }
}
