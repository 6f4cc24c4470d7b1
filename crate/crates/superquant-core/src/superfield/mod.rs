//! Charts, the supercommutative function algebra, the expression parser and
//! supermatrices.

mod chart;
mod function;
mod matrix;
mod parse;

pub use chart::{ChartSpec, Gen, MultiIndex, Parity};
pub use function::{Mono, ParityClass, Rat, SuperFunction};
pub use matrix::SuperMatrix;
pub use parse::{parse_expr, Parsed};

pub(crate) use matrix::{constant_part_positive, rational_inverse};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num_traits::One;

    use super::*;
    use crate::num::{parse_rat, rat_i64, rat_int};

    fn chart22() -> Arc<ChartSpec> {
        Arc::new(ChartSpec::new(2, 2))
    }

    fn p(text: &str, chart: &Arc<ChartSpec>) -> SuperFunction {
        parse_expr(text, chart).unwrap().value
    }

    #[test]
    fn parse_respects_written_odd_order() {
        let c = chart22();
        // x1*x3 stores the odd part {x3} with even coefficient x1
        let f = p("x1*x3", &c);
        assert_eq!(f, &p("x1", &c) * &p("x3", &c));
        // Koszul reorder: x4*x3 = -x3*x4
        assert_eq!(p("x4*x3", &c), -&p("x3*x4", &c));
    }

    #[test]
    fn parse_unknown_identifier() {
        let c = chart22();
        assert!(matches!(
            parse_expr("x9", &c),
            Err(crate::Error::UnknownIdentifier(_))
        ));
    }

    #[test]
    fn parse_flags_odd_square() {
        let c = chart22();
        let out = parse_expr("x3*x3", &c).unwrap();
        assert!(out.value.is_zero());
        assert!(out.odd_square_warning);
        let ok = parse_expr("x3*x4", &c).unwrap();
        assert!(!ok.odd_square_warning);
    }

    #[test]
    fn parse_rejects_exponent_on_odd() {
        let c = chart22();
        assert!(parse_expr("x3^2", &c).is_err());
        assert!(parse_expr("x1^2", &c).is_ok());
    }

    #[test]
    fn rational_literals() {
        let c = chart22();
        assert_eq!(p("-2/5", &c).constant_part(), parse_rat("-2/5").unwrap());
        assert_eq!(p("3", &c).constant_part(), rat_int(3));
        assert_eq!(p("1/2 + 1/2", &c).constant_part(), Rat::one());
    }

    #[test]
    fn products_and_squares() {
        let c = chart22();
        assert_eq!(p("x1*(x3*x4)", &c), p("x1*x3*x4", &c));
        assert!(p("x3*x3", &c).is_zero());
        assert_eq!(p("(x3*x4)*x3", &c), SuperFunction::zero(&c));
    }

    #[test]
    fn left_derivative_convention() {
        let c = chart22();
        // d3 (x3 x4) = x4
        assert_eq!(p("x3*x4", &c).partial(3).unwrap(), p("x4", &c));
        // d4 (x3 x4) = -x3 (one odd factor to the left)
        assert_eq!(p("x3*x4", &c).partial(4).unwrap(), p("-x3", &c));
        // d1 (x1^2) = 2 x1
        assert_eq!(p("x1^2", &c).partial(1).unwrap(), p("2*x1", &c));
    }

    #[test]
    fn odd_partials_anticommute() {
        let c = chart22();
        let f = p("x1*x3*x4 + x2^2*x3", &c);
        let a = f.partial(3).unwrap().partial(4).unwrap();
        let b = f.partial(4).unwrap().partial(3).unwrap();
        assert_eq!(a, -&b);
    }

    #[test]
    fn substitution_round_trip() {
        let c = chart22();
        // forward x1 -> x1 + x3 x4, inverse x1 -> x1 - x3 x4
        let fwd = vec![p("x1+x3*x4", &c), p("x2", &c), p("x3", &c), p("x4", &c)];
        let inv = vec![p("x1-x3*x4", &c), p("x2", &c), p("x3", &c), p("x4", &c)];
        let f = p("x1^2*x3 - 2*x2", &c);
        let round = f.substitute(&fwd).unwrap().substitute(&inv).unwrap();
        assert_eq!(round, f);
        // identity change
        let id = vec![p("x1", &c), p("x2", &c), p("x3", &c), p("x4", &c)];
        assert_eq!(f.substitute(&id).unwrap(), f);
    }

    #[test]
    fn substitution_parity_checked() {
        let c = chart22();
        let bad = vec![p("x3", &c), p("x2", &c), p("x3", &c), p("x4", &c)];
        assert!(p("x1", &c).substitute(&bad).is_err());
    }

    #[test]
    fn supertrace_examples() {
        let c21 = Arc::new(ChartSpec::new(2, 1));
        let id = SuperMatrix::identity(&c21);
        // str(id) = n - m
        assert_eq!(id.supertrace(), SuperFunction::int(&c21, 1));
        let diag = SuperMatrix::new(
            &c21,
            vec![
                vec![p("x1", &c21), SuperFunction::zero(&c21), SuperFunction::zero(&c21)],
                vec![SuperFunction::zero(&c21), p("x2", &c21), SuperFunction::zero(&c21)],
                vec![SuperFunction::zero(&c21), SuperFunction::zero(&c21), p("x1+x2", &c21)],
            ],
            Parity::Even,
        )
        .unwrap();
        assert_eq!(diag.supertrace(), p("x1 + x2 - (x1+x2)", &c21));
        let zero = SuperMatrix::new(
            &c21,
            vec![vec![SuperFunction::zero(&c21); 3]; 3],
            Parity::Even,
        )
        .unwrap();
        assert!(zero.supertrace().is_zero());
    }

    #[test]
    fn berezinian_block_diagonal() {
        let c11 = Arc::new(ChartSpec::new(1, 1));
        let m = SuperMatrix::new(
            &c11,
            vec![
                vec![SuperFunction::int(&c11, 2), SuperFunction::zero(&c11)],
                vec![SuperFunction::zero(&c11), SuperFunction::one(&c11)],
            ],
            Parity::Even,
        )
        .unwrap();
        assert_eq!(m.berezinian().unwrap(), SuperFunction::int(&c11, 2));
    }

    #[test]
    fn berezinian_unipotent_jacobian_is_one() {
        let c = chart22();
        // Jacobian of x1 -> x1 + x3 x4 with entries d(xbar^j)/d(x^i)
        let imgs = vec![p("x1+x3*x4", &c), p("x2", &c), p("x3", &c), p("x4", &c)];
        let entries: Vec<Vec<SuperFunction>> = (1..=4)
            .map(|i| (0..4).map(|j| imgs[j].partial(i).unwrap()).collect())
            .collect();
        let m = SuperMatrix::new(&c, entries, Parity::Even).unwrap();
        assert_eq!(m.berezinian().unwrap(), SuperFunction::one(&c));
    }

    #[test]
    fn berezinian_rejects_unsupported() {
        let c = chart22();
        // entry with non-constant even part outside the odd ideal
        let mut entries = vec![vec![SuperFunction::zero(&c); 4]; 4];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = SuperFunction::one(&c);
        }
        entries[0][0] = p("1 + x1", &c);
        let m = SuperMatrix::new(&c, entries, Parity::Even).unwrap();
        assert!(matches!(m.berezinian(), Err(crate::Error::UnsupportedBerezinian(_))));
    }

    #[test]
    fn rat_power_series() {
        let c = chart22();
        let f = p("4 + x3*x4", &c);
        let half = f.rat_power(&rat_i64(1, 2)).unwrap();
        assert_eq!(&half * &half, f);
        let inv = f.rat_power(&rat_int(-1)).unwrap();
        assert_eq!(&inv * &f, SuperFunction::one(&c));
        // 2 has no exact rational square root
        let g = p("2", &c);
        assert!(g.rat_power(&rat_i64(1, 2)).is_err());
    }

    #[test]
    fn display_round_trips_through_parser() {
        let c = chart22();
        for text in ["x1^2*x3 - 2/3*x2 + 1", "-x3*x4 + x1", "0", "5/7"] {
            let f = p(text, &c);
            let back = p(&f.to_string(), &c);
            assert_eq!(back, f);
        }
    }

    #[test]
    fn jet_chain_rule() {
        let base = ChartSpec::new(2, 2);
        let jc = Arc::new(base.with_jets(Parity::Even));
        let u0 = SuperFunction::jet(&jc, MultiIndex::zero(2)).unwrap();
        // d3 d4 u = -d4 d3 u
        let a = u0.partial(3).unwrap().partial(4).unwrap();
        let b = u0.partial(4).unwrap().partial(3).unwrap();
        assert_eq!(a, -&b);
        // even directions commute with everything
        let c1 = u0.partial(1).unwrap().partial(3).unwrap();
        let c2 = u0.partial(3).unwrap().partial(1).unwrap();
        assert_eq!(c1, c2);
    }
}
