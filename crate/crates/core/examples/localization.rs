//! Atiyah–Bott integrals on Gr(2,4).

use anc::algebra::{FactoredTerm, GenericSampler};
use anc::git::SignConvention;
use anc::ifunction::{assemble_coefficient, CoefficientRequest};
use anc::localization::{integrate, localize, LocalizedClass};
use anc::targets::{build, Family, TargetSpec};

fn main() -> anc::Result<()> {
    let t = build(
        &TargetSpec::new(Family::Grassmannian { k: 2, n: 4 }),
        SignConvention::Standard,
    )?;
    let p = &t.presentation;
    let mut sampler = GenericSampler::new(0);

    let one = LocalizedClass::one(&t.charts);
    let euler = LocalizedClass::tangent_euler(&t.charts);
    // c₁ of the determinant, to the fourth power: the degree of the Plücker embedding.
    let sigma = FactoredTerm::power(p.lift_character(&[1, 1]), 4)?;
    let sigma4 = LocalizedClass::from_chern_term(&t.charts, &sigma)?;
    println!("∫ 1     = {}", integrate(&one, &t.charts, &mut sampler)?);
    println!("∫ e(T)  = {}", integrate(&euler, &t.charts, &mut sampler)?);
    println!("∫ σ₁⁴   = {}", integrate(&sigma4, &t.charts, &mut sampler)?);

    let i1 = assemble_coefficient(p, &t.cone, &CoefficientRequest::new(vec![1], false, true))?;
    let value = integrate(&localize(&i1, &t.charts)?, &t.charts, &mut sampler)?;
    println!("∫ I_1   = {value}");
    Ok(())
}
