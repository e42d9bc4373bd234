//! A presentation written by hand: a (1,1) hypersurface in P¹ × P², read from JSON.

use anc::git::{validate, GitInput, SignConvention};
use anc::ifunction::IFunctionSeries;

const INPUT: &str = r#"{
  "schema_version": 1,
  "name": "hypersurface in P1 x P2",
  "rank_t": 2,
  "weights_v": [[1, 0], [1, 0], [0, 1], [0, 1], [0, 1]],
  "roots": [],
  "weyl": { "gl_blocks": [1, 1] },
  "theta": [1, 1],
  "twist": [[1, 1]],
  "cone": [[1, 0], [0, 1]],
  "anticanonical": [2, 3]
}"#;

fn main() -> anc::Result<()> {
    let input = GitInput::parse(INPUT)?;
    let p = input.presentation(SignConvention::Standard)?;
    let cone = input.cone()?;
    print!("{}", validate(&p, &cone, input.anticanonical.as_deref())?);

    let series = IFunctionSeries::compute(&p, &cone, &[1, 1], true, false)?;
    print!("{}", series.to_text());

    // Field names and positions are reported for bad input.
    let err = GitInput::parse(&INPUT.replace("\"theta\"", "\"theeta\"")).unwrap_err();
    println!("{err}");
    Ok(())
}
