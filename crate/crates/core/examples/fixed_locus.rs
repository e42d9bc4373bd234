//! Fixed-locus data of degree lifts on GB(2,5,1,2), with the block pattern drawn in ASCII.

use anc::git::{DegreeLift, SignConvention};
use anc::targets::{build, fixed_locus_descriptor, Family, TargetSpec};

fn main() -> anc::Result<()> {
    let t = build(
        &TargetSpec::new(Family::GrassmannBundle {
            k: 2,
            n: 5,
            l: 1,
            m: 2,
        }),
        SignConvention::Standard,
    )?;
    for lift in [vec![0, 0, 0], vec![1, 3, 2], vec![3, 1, 2], vec![0, 4, 4]] {
        let d = fixed_locus_descriptor(&t, &DegreeLift(lift))?;
        println!("{}", d.to_text(Some(2)));
    }
    Ok(())
}
