//! On Gr(2,4) each summand of `I_d` has a pole along `x₁ = x₂`; the Weyl sum does not.

use anc::algebra::GenericSampler;
use anc::git::SignConvention;
use anc::ifunction::{assemble_coefficient, CoefficientRequest};
use anc::localization::{pole_free_check, restrict};
use anc::targets::{build, Family, TargetSpec};

fn main() -> anc::Result<()> {
    let t = build(
        &TargetSpec::new(Family::Grassmannian { k: 2, n: 4 }),
        SignConvention::Standard,
    )?;
    let coeff = assemble_coefficient(
        &t.presentation,
        &t.cone,
        &CoefficientRequest::new(vec![1], false, true),
    )?;
    print!("{}", coeff.to_text());

    let chart = &t.charts[0];
    let mut sampler = GenericSampler::new(7);
    for (lift, term) in &coeff.summands {
        let alone = pole_free_check(&[chart.restrict_term(term)?], &mut sampler, 2)?;
        println!("summand {lift} at {}: poles {:?}", chart.label, alone.poles);
    }
    let sum = pole_free_check(&restrict(&coeff, chart)?, &mut sampler, 2)?;
    println!("sum at {}: pole free = {}", chart.label, sum.is_pole_free());
    Ok(())
}
