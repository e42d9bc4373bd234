//! The twisted I-function of a Grassmann bundle against its closed form, plus the mirror check.

use anc::algebra::{sum_evaluate, GenericSampler, Symbol};
use anc::cli::grassmann_bundle_point;
use anc::closed_forms::grassmann_bundle_coefficient;
use anc::git::SignConvention;
use anc::ifunction::{assemble_coefficient, mirror_hypothesis_report, CoefficientRequest};
use anc::localization::restrict;
use anc::targets::{build, Family, TargetSpec};

fn main() -> anc::Result<()> {
    let dims = (1, 4, 1, 2);
    let family = Family::GrassmannBundle {
        k: 1,
        n: 4,
        l: 1,
        m: 2,
    };
    let t = build(&TargetSpec::twisted(family), SignConvention::Standard)?;
    let report = mirror_hypothesis_report(&t.presentation, &t.cone, Some(&t.anticanonical));
    println!(
        "{}: {:?}, {}",
        t.name(),
        report.status,
        report.reasons.join("; ")
    );

    let l1: Vec<Symbol> = (0..4).map(|a| Symbol::lambda(0, a)).collect();
    let l2: Vec<Symbol> = (0..2).map(|b| Symbol::lambda(1, b)).collect();
    let mut sampler = GenericSampler::new(3);
    for (d, e) in [(1, 0), (0, 1), (1, 1), (2, 1)] {
        let req = CoefficientRequest::new(vec![d, e], true, true);
        let coeff = assemble_coefficient(&t.presentation, &t.cone, &req)?;
        for (chart, fp) in t.charts.iter().zip(&t.fixed_points) {
            let s = sampler.draw(l1.iter().chain(&l2));
            let get = |v: &[Symbol]| v.iter().map(|x| s.get(x).unwrap().clone()).collect();
            let point = grassmann_bundle_point(dims, fp, get(&l1), get(&l2));
            let expected = grassmann_bundle_coefficient(dims, d, e, true, &point)?;
            assert_eq!(sum_evaluate(&restrict(&coeff, chart)?, &s)?, expected);
        }
        println!("I_({d},{e}) agrees on {} charts", t.charts.len());
    }
    Ok(())
}
