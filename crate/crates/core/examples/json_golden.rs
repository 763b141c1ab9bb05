// JSON rendering and parsing; re-rendering a parsed document is the identity.

use mgn_chern::formulas::{ch_cotangent, FormulaConfig};
use mgn_chern::taut::{parse_json, render_json, render_latex, ModuliSpec};

pub fn run() -> mgn_chern::Result<String> {
    let spec = ModuliSpec::concrete_n(1, 2)?;
    let ch2 = ch_cotangent(&spec, 2, &FormulaConfig::default())?.component(2).with_order(2);
    let json = render_json(&ch2);
    let back = parse_json(&json, &spec)?;
    let mut out = format!("{json}\n");
    out += &format!("latex: {}\n", render_latex(&back));
    out += &format!("round trip identical: {}\n", render_json(&back) == json);
    Ok(out)
}

#[allow(dead_code)]
fn main() -> mgn_chern::Result<()> {
    print!("{}", run()?);
    Ok(())
}
