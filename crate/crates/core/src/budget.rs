//! Work budgets.
//!
//! Long-running computations take an explicit budget and fail with
//! `Error::BudgetExceeded` (never a wrong answer) when it runs out. The
//! `SYZLAB_BUDGET_SCALE` environment variable, applied by the CLI, scales
//! every limit by a float factor; `deep()` is the profile used by the
//! heavyweight opt-in runs.

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    /// Single-term reduction steps across one Groebner run.
    pub gb_steps: u64,
    /// Columns (domain dimension) allowed in a Koszul strand matrix.
    pub matrix_cols: usize,
    /// Rows (target dimension) allowed in a Koszul strand matrix.
    pub matrix_rows: usize,
    /// Projective points visited in one rank-locus enumeration.
    pub enum_points: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            gb_steps: 20_000_000,
            matrix_cols: 6_500,
            matrix_rows: 80_000,
            enum_points: 2_000_000,
        }
    }
}

impl Budget {
    pub fn deep() -> Self {
        Budget::default().scaled(64.0)
    }

    pub fn scaled(self, factor: f64) -> Self {
        let f = if factor.is_finite() && factor > 0.0 {
            factor
        } else {
            1.0
        };
        let mul_u64 = |v: u64| -> u64 {
            let x = v as f64 * f;
            if x >= u64::MAX as f64 {
                u64::MAX
            } else {
                x as u64
            }
        };
        let mul_usize = |v: usize| -> usize {
            let x = v as f64 * f;
            if x >= usize::MAX as f64 {
                usize::MAX
            } else {
                x as usize
            }
        };
        Budget {
            gb_steps: mul_u64(self.gb_steps),
            matrix_cols: mul_usize(self.matrix_cols),
            matrix_rows: mul_usize(self.matrix_rows),
            enum_points: mul_u64(self.enum_points),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaling() {
        let b = Budget::default().scaled(2.0);
        assert_eq!(b.gb_steps, 40_000_000);
        assert_eq!(b.matrix_cols, 13_000);
        // nonsense factors fall back to identity
        let c = Budget::default().scaled(f64::NAN);
        assert_eq!(c.gb_steps, Budget::default().gb_steps);
        let d = Budget::default().scaled(-3.0);
        assert_eq!(d.enum_points, Budget::default().enum_points);
    }

    #[test]
    fn deep_is_strictly_larger() {
        let (b, d) = (Budget::default(), Budget::deep());
        assert!(d.gb_steps > b.gb_steps);
        assert!(d.matrix_cols > b.matrix_cols);
        assert!(d.enum_points > b.enum_points);
    }
}
