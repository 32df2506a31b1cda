//! Cross-checks of the generic numeric measures against every closed form,
//! over randomized parameter points and the shared Γt grid. The numeric path
//! never consults the formulas, so agreement here validates both routes.

use qcdeph::channel::{dephase, DephasingPoint};
use qcdeph::correlations::{
    classical_closed_form, classical_correlation, discord_closed_form, lqu,
    lqu_closed_form_dfs_mix, lqu_closed_form_two_param, negativity, negativity_closed_form_dfs_mix,
    negativity_closed_form_iso_mix, negativity_closed_form_two_param, quantum_discord,
};
use qcdeph::states::{
    dfs_mix_state, iso_mix_state, substream, two_param_state, DfsMixFamily, IsoMixFamily,
    TwoParamFamily,
};
use rand::Rng;

const GRID: [f64; 6] = [0.0, 0.5, 1.0, 2.0, 5.0, 10.0];

fn gt(gamma_t: f64) -> DephasingPoint {
    DephasingPoint::new(gamma_t).unwrap()
}

#[test]
fn two_param_negativity_and_lqu_match_closed_forms() {
    let mut rng = substream(2001, 0);
    for _ in 0..200 {
        let alpha = rng.gen::<f64>() * 0.5;
        let gamma = rng.gen::<f64>() * (1.0 - 2.0 * alpha);
        let f = TwoParamFamily::new(alpha, gamma).unwrap();
        let rho0 = two_param_state(&f);
        for t in GRID {
            let p = gt(t);
            let rho = dephase(&rho0, p);
            let dn = (negativity(&rho) - negativity_closed_form_two_param(&f, p)).abs();
            assert!(
                dn <= 1e-8,
                "negativity dev {dn:.3e} at ({alpha}, {gamma}, {t})"
            );
            let dl = (lqu(&rho) - lqu_closed_form_two_param(&f, p)).abs();
            assert!(dl <= 1e-8, "LQU dev {dl:.3e} at ({alpha}, {gamma}, {t})");
        }
    }
}

#[test]
fn two_param_discord_matches_closed_form() {
    // The discord check carries a full measurement maximization per point;
    // 200 parameter points across the 6-point grid.
    let mut rng = substream(2002, 0);
    for _ in 0..200 {
        let alpha = rng.gen::<f64>() * 0.5;
        let gamma = rng.gen::<f64>() * (1.0 - 2.0 * alpha);
        let f = TwoParamFamily::new(alpha, gamma).unwrap();
        let rho0 = two_param_state(&f);
        for t in GRID {
            let p = gt(t);
            let rho = dephase(&rho0, p);
            let dq = (quantum_discord(&rho) - discord_closed_form(&f, p)).abs();
            assert!(
                dq <= 1e-6,
                "discord dev {dq:.3e} at ({alpha}, {gamma}, {t})"
            );
        }
    }
}

#[test]
fn two_param_classical_correlation_time_invariant_and_exact() {
    let mut rng = substream(2003, 0);
    for _ in 0..20 {
        let alpha = rng.gen::<f64>() * 0.5;
        let gamma = rng.gen::<f64>() * (1.0 - 2.0 * alpha);
        let f = TwoParamFamily::new(alpha, gamma).unwrap();
        let rho0 = two_param_state(&f);
        let want = classical_closed_form(&f);
        for t in [0.0, 2.0, 10.0] {
            let (c, _) = classical_correlation(&dephase(&rho0, gt(t)));
            assert!(
                (c - want).abs() <= 1e-6,
                "C dev {:.3e} at ({alpha}, {gamma}, {t})",
                (c - want).abs()
            );
        }
    }
}

#[test]
fn dfs_mix_matches_closed_forms() {
    let mut rng = substream(2004, 0);
    for _ in 0..200 {
        let alpha = rng.gen::<f64>();
        let f = DfsMixFamily::new(alpha).unwrap();
        let rho0 = dfs_mix_state(&f);
        for t in GRID {
            let p = gt(t);
            let rho = dephase(&rho0, p);
            let dn = (negativity(&rho) - negativity_closed_form_dfs_mix(&f, p)).abs();
            assert!(dn <= 1e-8, "negativity dev {dn:.3e} at ({alpha}, {t})");
            let dl = (lqu(&rho) - lqu_closed_form_dfs_mix(&f, p)).abs();
            assert!(dl <= 1e-8, "LQU dev {dl:.3e} at ({alpha}, {t})");
        }
    }
}

#[test]
fn iso_mix_negativity_matches_closed_form() {
    let mut rng = substream(2005, 0);
    for _ in 0..200 {
        let alpha = rng.gen::<f64>();
        let beta = rng.gen::<f64>();
        let f = IsoMixFamily::new(alpha, beta).unwrap();
        let rho0 = iso_mix_state(&f);
        for t in GRID {
            let p = gt(t);
            let dn = (negativity(&dephase(&rho0, p)) - negativity_closed_form_iso_mix(&f, p)).abs();
            assert!(
                dn <= 1e-8,
                "negativity dev {dn:.3e} at ({alpha}, {beta}, {t})"
            );
        }
    }
}
