//! Compactly supported piecewise-constant potentials.
//!
//! This is the single canonical potential representation of the crate: all
//! scaling, summation and moment operations on it are exact (closed-form
//! arithmetic on breakpoints and values), so no quadrature error enters the
//! spectral pipeline anywhere.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Relative tolerance for merging nearly coincident breakpoints in [`sum`].
const MERGE_REL_TOL: f64 = 1e-12;

/// A real-valued piecewise-constant function of compact support.
///
/// `values[i]` is the value on the open interval `(breakpoints[i], breakpoints[i+1])`;
/// the function is exactly zero outside `[breakpoints.first(), breakpoints.last()]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Potential {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl Potential {
    /// Builds a potential from its breakpoints and per-piece values.
    ///
    /// Breakpoints must be finite and strictly increasing, with exactly one
    /// value per piece. Adjacent equal values are kept as distinct pieces;
    /// the representation is preserved as given.
    pub fn make_piecewise(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        const OP: &str = "make_piecewise";
        if values.is_empty() {
            return Err(Error::invalid(OP, "at least one piece is required"));
        }
        if breakpoints.len() != values.len() + 1 {
            return Err(Error::invalid(
                OP,
                format!(
                    "expected {} breakpoints for {} values, got {}",
                    values.len() + 1,
                    values.len(),
                    breakpoints.len()
                ),
            ));
        }
        if !breakpoints.iter().all(|x| x.is_finite()) || !values.iter().all(|v| v.is_finite()) {
            return Err(Error::invalid(OP, "breakpoints and values must be finite"));
        }
        for w in breakpoints.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::invalid(
                    OP,
                    format!(
                        "breakpoints must be strictly increasing, got {} >= {}",
                        w[0], w[1]
                    ),
                ));
            }
        }
        Ok(Potential {
            breakpoints,
            values,
        })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Left and right edge of the support interval.
    pub fn support(&self) -> (f64, f64) {
        (self.breakpoints[0], *self.breakpoints.last().unwrap())
    }

    /// Pointwise evaluation; exactly zero outside the support. A breakpoint
    /// is attributed to the piece on its right (the last one to its left).
    pub fn eval(&self, x: f64) -> f64 {
        let (a, b) = self.support();
        if x < a || x > b {
            return 0.0;
        }
        // partition_point returns the first breakpoint > x; piece index is one less.
        let idx = self.breakpoints.partition_point(|&bp| bp <= x);
        let piece = idx.saturating_sub(1).min(self.values.len() - 1);
        self.values[piece]
    }

    /// One-sided evaluation: the value of the piece immediately left
    /// (`left = true`) or right of `x`. Zero outside the support.
    pub fn eval_side(&self, x: f64, left: bool) -> f64 {
        let (a, b) = self.support();
        if x <= a && left || x < a || x >= b && !left || x > b {
            return 0.0;
        }
        let idx = if left {
            self.breakpoints.partition_point(|&bp| bp < x)
        } else {
            self.breakpoints.partition_point(|&bp| bp <= x)
        };
        self.values[idx.saturating_sub(1).min(self.values.len() - 1)]
    }

    /// True when every piece value is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// Minimum of the potential over the whole line (zero outside support).
    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0_f64, f64::min)
    }

    /// `x ↦ eps^(-order) · P(x / eps)`: breakpoints are multiplied by `eps`
    /// and values by `eps^(-order)`, exactly.
    pub fn scale(&self, eps: f64, order: u32) -> Result<Self> {
        const OP: &str = "scale";
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::invalid(
                OP,
                format!("eps must be positive, got {eps}"),
            ));
        }
        if order > 2 {
            return Err(Error::invalid(
                OP,
                format!("order must be 0, 1 or 2, got {order}"),
            ));
        }
        let factor = eps.powi(-(order as i32));
        Ok(Potential {
            breakpoints: self.breakpoints.iter().map(|&x| x * eps).collect(),
            values: self.values.iter().map(|&v| v * factor).collect(),
        })
    }

    /// Multiplies every piece value by a constant; the grid is kept.
    pub fn mul_values(&self, c: f64) -> Self {
        Potential {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|&v| v * c).collect(),
        }
    }

    /// Returns an equivalent potential whose grid contains `x`, provided `x`
    /// lies strictly inside the support; otherwise returns a clone.
    pub fn with_breakpoint(&self, x: f64) -> Self {
        let (a, b) = self.support();
        if x <= a || x >= b || self.breakpoints.contains(&x) {
            return self.clone();
        }
        let idx = self.breakpoints.partition_point(|&bp| bp < x);
        let mut breakpoints = self.breakpoints.clone();
        let mut values = self.values.clone();
        breakpoints.insert(idx, x);
        values.insert(idx, values[idx - 1]);
        Potential {
            breakpoints,
            values,
        }
    }

    /// Drops zero-valued pieces at the edges of the grid (the potential is
    /// zero outside the support anyway), keeping at least one piece.
    pub fn trim_zero_edges(&self) -> Self {
        let mut first = 0;
        let mut last = self.values.len();
        while last - first > 1 && self.values[first] == 0.0 {
            first += 1;
        }
        while last - first > 1 && self.values[last - 1] == 0.0 {
            last -= 1;
        }
        Potential {
            breakpoints: self.breakpoints[first..=last].to_vec(),
            values: self.values[first..last].to_vec(),
        }
    }

    /// Extends the grid with zero-valued pieces so the support covers
    /// `[lo, hi]`. Values and existing breakpoints are untouched.
    pub fn pad_to(&self, lo: f64, hi: f64) -> Result<Self> {
        const OP: &str = "pad_to";
        if !(lo < hi) {
            return Err(Error::invalid(
                OP,
                format!("need lo < hi, got [{lo}, {hi}]"),
            ));
        }
        let mut breakpoints = self.breakpoints.clone();
        let mut values = self.values.clone();
        if lo < breakpoints[0] {
            breakpoints.insert(0, lo);
            values.insert(0, 0.0);
        }
        if hi > *breakpoints.last().unwrap() {
            breakpoints.push(hi);
            values.push(0.0);
        }
        Ok(Potential {
            breakpoints,
            values,
        })
    }

    /// Exact integral of the potential over `[a, b]`.
    pub fn integrate(&self, a: f64, b: f64) -> f64 {
        if !(a < b) {
            return 0.0;
        }
        let mut total = 0.0;
        for i in 0..self.values.len() {
            let lo = self.breakpoints[i].max(a);
            let hi = self.breakpoints[i + 1].min(b);
            if hi > lo {
                total += self.values[i] * (hi - lo);
            }
        }
        total
    }

    /// Exact moment `∫ x^k g(x) dx`.
    ///
    /// With `negative_part_abs` unset, `g = P` and the integrand is the signed
    /// monomial `x^k`. With it set, `g = |min(P, 0)|` and the integrand uses
    /// `|x|^k`, which is the form entering the eigenvalue-count bound.
    pub fn moment(&self, k: u32, negative_part_abs: bool) -> f64 {
        let mut total = 0.0;
        for i in 0..self.values.len() {
            let (a, b) = (self.breakpoints[i], self.breakpoints[i + 1]);
            if negative_part_abs {
                let w = self.values[i].min(0.0).abs();
                if w != 0.0 {
                    total += w * abs_monomial_integral(a, b, k);
                }
            } else {
                total += self.values[i] * monomial_integral(a, b, k);
            }
        }
        total
    }

    /// Pointwise sum of potentials on the merged breakpoint grid. The support
    /// of the result is the convex hull of the inputs' supports; pieces where
    /// all summands vanish are retained so the grid spans the hull.
    pub fn sum(parts: &[Potential]) -> Result<Self> {
        const OP: &str = "sum";
        if parts.is_empty() {
            return Err(Error::invalid(OP, "at least one potential is required"));
        }
        if parts.len() == 1 {
            return Ok(parts[0].clone());
        }
        let mut grid: Vec<f64> = parts
            .iter()
            .flat_map(|p| p.breakpoints.iter().copied())
            .collect();
        grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let span = grid[grid.len() - 1] - grid[0];
        let tol = MERGE_REL_TOL * span.max(f64::MIN_POSITIVE);
        let mut merged: Vec<f64> = Vec::with_capacity(grid.len());
        for x in grid {
            match merged.last() {
                Some(&last) if x - last <= tol => {}
                _ => merged.push(x),
            }
        }
        if merged.len() < 2 {
            return Err(Error::invalid(OP, "summed support has zero length"));
        }
        let values = merged
            .windows(2)
            .map(|w| {
                let mid = 0.5 * (w[0] + w[1]);
                parts.iter().map(|p| p.eval(mid)).sum()
            })
            .collect();
        Ok(Potential {
            breakpoints: merged,
            values,
        })
    }
}

/// `∫_a^b x^k dx`, exact.
fn monomial_integral(a: f64, b: f64, k: u32) -> f64 {
    let p = k as i32 + 1;
    (b.powi(p) - a.powi(p)) / p as f64
}

/// `∫_a^b |x|^k dx`, exact (splits at the origin when the interval straddles it).
fn abs_monomial_integral(a: f64, b: f64, k: u32) -> f64 {
    let p = k as i32 + 1;
    if a >= 0.0 {
        (b.powi(p) - a.powi(p)) / p as f64
    } else if b <= 0.0 {
        ((-a).powi(p) - (-b).powi(p)) / p as f64
    } else {
        ((-a).powi(p) + b.powi(p)) / p as f64
    }
}

/// Named potential families used throughout the experiments.
///
/// All built-in shapes live on `(-1, 1)`: `square_well(c)` has value `-c`,
/// `square_barrier(c)` value `+c`, `step_dipole(h)` is `+h` on `(-1, 0)` and
/// `-h` on `(0, 1)` (zero mean), and `double_step(l, r)` takes arbitrary
/// values `l` and `r` on the two halves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum PotentialSpec {
    SquareWell {
        depth: f64,
    },
    SquareBarrier {
        height: f64,
    },
    StepDipole {
        height: f64,
    },
    DoubleStep {
        left: f64,
        right: f64,
    },
    Custom {
        breakpoints: Vec<f64>,
        values: Vec<f64>,
    },
}

impl PotentialSpec {
    /// Realizes the named family as a concrete piecewise-constant potential.
    pub fn build(&self) -> Result<Potential> {
        const OP: &str = "builtin";
        match self {
            PotentialSpec::SquareWell { depth } => {
                if !(*depth > 0.0) {
                    return Err(Error::invalid(
                        OP,
                        format!("square_well depth must be positive, got {depth}"),
                    ));
                }
                Potential::make_piecewise(vec![-1.0, 1.0], vec![-depth])
            }
            PotentialSpec::SquareBarrier { height } => {
                if !(*height > 0.0) {
                    return Err(Error::invalid(
                        OP,
                        format!("square_barrier height must be positive, got {height}"),
                    ));
                }
                Potential::make_piecewise(vec![-1.0, 1.0], vec![*height])
            }
            PotentialSpec::StepDipole { height } => {
                if !(*height > 0.0) {
                    return Err(Error::invalid(
                        OP,
                        format!("step_dipole height must be positive, got {height}"),
                    ));
                }
                Potential::make_piecewise(vec![-1.0, 0.0, 1.0], vec![*height, -height])
            }
            PotentialSpec::DoubleStep { left, right } => {
                Potential::make_piecewise(vec![-1.0, 0.0, 1.0], vec![*left, *right])
            }
            PotentialSpec::Custom {
                breakpoints,
                values,
            } => Potential::make_piecewise(breakpoints.clone(), values.clone()),
        }
    }
}

/// Convenience constructors mirroring [`PotentialSpec`].
pub fn square_well(depth: f64) -> Potential {
    PotentialSpec::SquareWell { depth }
        .build()
        .expect("positive depth")
}

pub fn square_barrier(height: f64) -> Potential {
    PotentialSpec::SquareBarrier { height }
        .build()
        .expect("positive height")
}

pub fn step_dipole(height: f64) -> Potential {
    PotentialSpec::StepDipole { height }
        .build()
        .expect("positive height")
}

// Deserialization goes through a shadow struct so the representation
// invariants hold for any JSON input.
impl<'de> Deserialize<'de> for Potential {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            breakpoints: Vec<f64>,
            values: Vec<f64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Potential::make_piecewise(raw.breakpoints, raw.values).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_piecewise_basic_shapes() {
        let well = Potential::make_piecewise(vec![-1.0, 1.0], vec![-10.0]).unwrap();
        assert_eq!(well.eval(0.0), -10.0);
        assert_eq!(well.eval(2.0), 0.0);
        assert_eq!(well.eval(-2.0), 0.0);

        let dipole = Potential::make_piecewise(vec![-1.0, 0.0, 1.0], vec![8.0, -8.0]).unwrap();
        assert_eq!(dipole.eval(-0.5), 8.0);
        assert_eq!(dipole.eval(0.5), -8.0);
    }

    #[test]
    fn make_piecewise_rejects_degenerate_input() {
        assert!(Potential::make_piecewise(vec![0.0, 0.0], vec![1.0]).is_err());
        assert!(Potential::make_piecewise(vec![1.0, 0.0], vec![1.0]).is_err());
        assert!(Potential::make_piecewise(vec![0.0, 1.0], vec![]).is_err());
        assert!(Potential::make_piecewise(vec![0.0, 1.0, 2.0], vec![1.0]).is_err());
        assert!(Potential::make_piecewise(vec![0.0, f64::NAN], vec![1.0]).is_err());
    }

    #[test]
    fn scale_acts_on_representation() {
        let dipole = step_dipole(8.0);
        let scaled = dipole.scale(0.5, 2).unwrap();
        assert_eq!(scaled.breakpoints(), &[-0.5, 0.0, 0.5]);
        assert_eq!(scaled.values(), &[32.0, -32.0]);

        let p = square_well(10.0);
        assert_eq!(p.scale(1.0, 1).unwrap(), p);

        let narrow = p.scale(0.1, 2).unwrap();
        assert_eq!(narrow.breakpoints(), &[-0.1, 0.1]);
        assert!((narrow.values()[0] + 1000.0).abs() < 1e-9);

        // Binary-exact scaling factors keep the representation exact.
        let narrow = p.scale(0.25, 2).unwrap();
        assert_eq!(narrow.breakpoints(), &[-0.25, 0.25]);
        assert_eq!(narrow.values(), &[-160.0]);

        assert!(p.scale(0.0, 2).is_err());
        assert!(p.scale(-1.0, 1).is_err());
    }

    #[test]
    fn scale_composes_exactly() {
        let p = step_dipole(8.0);
        let twice = p.scale(0.25, 2).unwrap().scale(0.5, 2).unwrap();
        let once = p.scale(0.125, 2).unwrap();
        assert_eq!(twice, once);
    }

    #[test]
    fn sum_merges_grids() {
        let a = Potential::make_piecewise(vec![-1.0, 1.0], vec![-10.0]).unwrap();
        let b = Potential::make_piecewise(vec![-0.5, 0.5], vec![3.0]).unwrap();
        let s = Potential::sum(&[a, b]).unwrap();
        assert_eq!(s.breakpoints(), &[-1.0, -0.5, 0.5, 1.0]);
        assert_eq!(s.values(), &[-10.0, -7.0, -10.0]);
    }

    #[test]
    fn sum_with_zero_is_pointwise_identity() {
        let p = step_dipole(8.0);
        let zero = Potential::make_piecewise(vec![-0.3, 0.4], vec![0.0]).unwrap();
        let s = Potential::sum(&[p.clone(), zero]).unwrap();
        for &x in &[-0.9, -0.5, -0.1, 0.2, 0.35, 0.7, 1.5] {
            assert_eq!(s.eval(x), p.eval(x), "x = {x}");
        }
    }

    #[test]
    fn sum_cancellation_yields_zero_potential() {
        let p = square_well(10.0);
        let s = Potential::sum(&[p.clone(), p.mul_values(-1.0)]).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.support(), (-1.0, 1.0));
    }

    #[test]
    fn sum_retains_gap_pieces() {
        let a = Potential::make_piecewise(vec![-2.0, -1.0], vec![1.0]).unwrap();
        let b = Potential::make_piecewise(vec![1.0, 2.0], vec![4.0]).unwrap();
        let s = Potential::sum(&[a, b]).unwrap();
        assert_eq!(s.support(), (-2.0, 2.0));
        assert_eq!(s.eval(0.0), 0.0);
        assert_eq!(s.eval(-1.5), 1.0);
        assert_eq!(s.eval(1.5), 4.0);
    }

    #[test]
    fn moments_match_hand_arithmetic() {
        let dipole = step_dipole(8.0);
        assert_eq!(dipole.moment(0, false), 0.0);
        assert_eq!(dipole.moment(1, false), -8.0);

        let well = square_well(10.0);
        assert_eq!(well.moment(1, true), 10.0);
        assert_eq!(well.moment(0, false), -20.0);

        let barrier = square_barrier(5.0);
        assert_eq!(barrier.moment(1, true), 0.0);
    }

    #[test]
    fn moment_linearity_under_negation() {
        for p in [square_well(3.0), step_dipole(2.5), square_barrier(7.0)] {
            let neg = p.mul_values(-1.0);
            assert_eq!(p.moment(0, false) + neg.moment(0, false), 0.0);
        }
    }

    #[test]
    fn moment_change_of_variables_under_scale() {
        let p = step_dipole(8.0);
        for eps in [0.5, 0.1, 0.03] {
            let scaled = p.scale(eps, 2).unwrap();
            let lhs = scaled.moment(0, false);
            let rhs = p.moment(0, false) / eps;
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
            // |x||P⁻| variant: ∫|x||(ε⁻²P(x/ε))⁻|dx = ∫|t||P⁻(t)|dt exactly.
            let lhs_abs = scaled.moment(1, true);
            assert!((lhs_abs - p.moment(1, true)).abs() <= 1e-12 * p.moment(1, true).max(1.0));
        }
    }

    #[test]
    fn builtin_specs() {
        assert_eq!(square_well(10.0).values(), &[-10.0]);
        assert_eq!(step_dipole(8.0).values(), &[8.0, -8.0]);
        assert_eq!(square_barrier(5.0).values(), &[5.0]);
        assert!(PotentialSpec::SquareWell { depth: -1.0 }.build().is_err());
        assert!(PotentialSpec::StepDipole { height: 0.0 }.build().is_err());

        let two = PotentialSpec::DoubleStep {
            left: 3.0,
            right: -7.0,
        }
        .build()
        .unwrap();
        assert_eq!(two.breakpoints(), &[-1.0, 0.0, 1.0]);
        assert_eq!(two.values(), &[3.0, -7.0]);
        // step_dipole is the antisymmetric special case.
        assert_eq!(
            PotentialSpec::DoubleStep {
                left: 8.0,
                right: -8.0
            }
            .build()
            .unwrap(),
            step_dipole(8.0)
        );
    }

    #[test]
    fn sum_associative_and_commutative_pointwise() {
        let a = step_dipole(8.0);
        let b = Potential::make_piecewise(vec![-0.5, 0.25], vec![3.0]).unwrap();
        let c = Potential::make_piecewise(vec![0.1, 1.4], vec![-2.0]).unwrap();
        let left =
            Potential::sum(&[Potential::sum(&[a.clone(), b.clone()]).unwrap(), c.clone()]).unwrap();
        let right =
            Potential::sum(&[a.clone(), Potential::sum(&[b.clone(), c.clone()]).unwrap()]).unwrap();
        let swapped = Potential::sum(&[c, b, a]).unwrap();
        for i in 0..=100 {
            let x = -1.6 + 3.2 * i as f64 / 100.0;
            assert_eq!(left.eval(x), right.eval(x), "associativity at {x}");
            assert_eq!(left.eval(x), swapped.eval(x), "commutativity at {x}");
        }
        assert_eq!(left.support(), (-1.0, 1.4));
    }

    #[test]
    fn trim_zero_edges_behavior() {
        let padded = square_well(10.0).pad_to(-5.0, 7.0).unwrap();
        let trimmed = padded.trim_zero_edges();
        assert_eq!(trimmed, square_well(10.0));
        // All-zero potentials keep one piece.
        let zero = Potential::make_piecewise(vec![-1.0, 0.0, 1.0], vec![0.0, 0.0]).unwrap();
        assert_eq!(zero.trim_zero_edges().values().len(), 1);
    }

    #[test]
    fn with_breakpoint_preserves_evaluation() {
        let p = square_well(10.0);
        let split = p.with_breakpoint(0.0);
        assert_eq!(split.breakpoints(), &[-1.0, 0.0, 1.0]);
        for &x in &[-0.7, -0.1, 0.1, 0.9] {
            assert_eq!(split.eval(x), p.eval(x));
        }
        // Outside / on the edge: unchanged representation.
        assert_eq!(p.with_breakpoint(-1.0), p);
        assert_eq!(p.with_breakpoint(3.0), p);
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let p = Potential::make_piecewise(
            vec![-1.0, 0.1 + 0.2, 1.0 / 3.0 + 1.0, 2.0_f64.sqrt() + 2.0],
            vec![-10.123456789012345, 3.0e-17, 7.0 / 11.0],
        )
        .unwrap();
        let text = serde_json::to_string(&p).unwrap();
        let back: Potential = serde_json::from_str(&text).unwrap();
        assert_eq!(back.breakpoints(), p.breakpoints());
        assert_eq!(back.values(), p.values());

        let spec = PotentialSpec::SquareWell { depth: 10.0 };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(text, r#"{"kind":"square_well","params":{"depth":10.0}}"#);
        let back: PotentialSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn json_rejects_invalid_potential() {
        let bad = r#"{"breakpoints":[1.0,0.0],"values":[2.0]}"#;
        assert!(serde_json::from_str::<Potential>(bad).is_err());
    }
}
