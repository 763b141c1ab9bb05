// Graded pieces of ch of the cotangent and tangent bundles.

use mgn_chern::formulas::{ch_cotangent, ch_tangent, FormulaConfig};
use mgn_chern::taut::{render_text, ModuliSpec};

pub fn run() -> mgn_chern::Result<String> {
    let spec = ModuliSpec::generic(2, 1)?;
    let config = FormulaConfig::default();
    let cot = ch_cotangent(&spec, 4, &config)?;
    let tan = ch_tangent(&spec, 4, &config)?;
    let mut out = format!("M(2,1), rank {}\n", spec.dimension());
    for d in 1..=4 {
        out += &format!("ch_{d}(Omega) = {}\n", render_text(&cot.component(d)));
    }
    out += &format!("ch_3(T) = {}\n", render_text(&tan.component(3)));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> mgn_chern::Result<()> {
    print!("{}", run()?);
    Ok(())
}
