mod common;

use common::{body_2_or_3, unit_body};
use ohsawa_core::rational::q;
use ohsawa_core::shell_oracle::{default_t_grid, McOptions, Mode, ShellOracle};
use ohsawa_core::{Execution, HyperbolicHull, NewtonBody};
use proptest::prelude::*;

proptest! {
    #![proptest_config(common::config(24))]

    #[test]
    fn volume_rises_and_scaled_volume_falls(gens in body_2_or_3()) {
        let o = ShellOracle::new(&unit_body(&gens)).unwrap();
        let mc = McOptions::default();
        let pts: Vec<_> = [-30.0, -12.0, -5.0, -2.0, -0.5]
            .iter()
            .map(|s| o.volume(*s, Mode::Exact, &mc).unwrap())
            .collect();
        for w in pts.windows(2) {
            prop_assert!(w[1].value >= w[0].value);
            prop_assert!(w[1].scaled <= w[0].scaled * (1.0 + 1e-9));
        }
        for p in &pts {
            prop_assert!((p.value * (-p.s).exp() - p.scaled).abs() <= 1e-10 * p.scaled);
        }
    }

    #[test]
    fn exact_shells_are_nonnegative(gens in body_2_or_3()) {
        let o = ShellOracle::new(&unit_body(&gens)).unwrap();
        for e in o.shell_series(&default_t_grid(), Mode::Exact, &McOptions::default()).unwrap() {
            prop_assert!(e.value >= 0.0 && e.stderr == 0.0);
        }
    }
}

#[test]
fn sampled_shells_do_not_depend_on_the_thread_count() {
    let body: NewtonBody = HyperbolicHull::new(q(1, 1), q(1, 4), q(4, 1), q(8, 1)).unwrap().into();
    let o = ShellOracle::new(&body).unwrap();
    let seq = McOptions { samples: 100_000, seed: 42, exec: Execution::Sequential };
    let par = McOptions { exec: Execution::Parallel, ..seq };
    let ts = default_t_grid();
    assert_eq!(o.shell_series(&ts, Mode::Mc, &seq).unwrap(), o.shell_series(&ts, Mode::Mc, &par).unwrap());
    assert_eq!(o.shell_series(&ts, Mode::Exact, &seq).unwrap(), o.shell_series(&ts, Mode::Exact, &par).unwrap());
}

#[test]
fn sampled_and_exact_shells_agree_on_the_hyperbolic_hull() {
    let body: NewtonBody = HyperbolicHull::new(q(1, 1), q(1, 4), q(4, 1), q(8, 1)).unwrap().into();
    let o = ShellOracle::new(&body).unwrap();
    let mc = McOptions { samples: 200_000, seed: 7, exec: Execution::default() };
    for t in default_t_grid() {
        let a = o.shell(t, Mode::Exact, &mc).unwrap();
        let b = o.shell(t, Mode::Mc, &mc).unwrap();
        assert!((a.value - b.value).abs() < 4.0 * b.stderr, "t = {t}: {} vs {} ± {}", a.value, b.value, b.stderr);
    }
}
