//! I-function of the projective plane, checked against `1/Π(H + λₐ + kz)` at every fixed point.

use anc::algebra::{sum_evaluate, GenericSampler, Rational, Symbol};
use anc::closed_forms::projective_space_coefficient;
use anc::git::SignConvention;
use anc::ifunction::IFunctionSeries;
use anc::localization::restrict;
use anc::targets::{build, Family, TargetSpec};

fn main() -> anc::Result<()> {
    let t = build(
        &TargetSpec::new(Family::ProjectiveSpace(2)),
        SignConvention::Standard,
    )?;
    let series = IFunctionSeries::compute(&t.presentation, &t.cone, &[3], false, true)?;
    print!("{}", series.to_text());

    let lambdas: Vec<Symbol> = (0..3).map(|a| Symbol::lambda(0, a)).collect();
    let mut sampler = GenericSampler::new(1);
    for coeff in &series.coefficients {
        for (chart, fp) in t.charts.iter().zip(&t.fixed_points) {
            let s = sampler.draw(&lambdas);
            let lv: Vec<Rational> = lambdas.iter().map(|l| s.get(l).unwrap().clone()).collect();
            let h = -lv[fp[0]].clone();
            let expected = projective_space_coefficient(3, coeff.class[0], &h, Some(&lv))?;
            let found = sum_evaluate(&restrict(coeff, chart)?, &s)?;
            assert_eq!(found, expected);
        }
    }
    println!("closed form matches on all {} charts", t.charts.len());
    Ok(())
}
