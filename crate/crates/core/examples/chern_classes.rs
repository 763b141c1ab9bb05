// Chern classes of the tangent bundle, with the partition formula checked
// against the graded exponential.

use mgn_chern::formulas::{
    ch_tangent, chern_classes, chern_exp_oracle, chern_from_ch, graded_components, Bundle, FormulaConfig,
};
use mgn_chern::taut::{render_text, ModuliSpec};

pub fn run() -> mgn_chern::Result<String> {
    let spec = ModuliSpec::generic(1, 2)?;
    let config = FormulaConfig::default();
    let mut out = String::new();
    for (j, c) in chern_classes(&spec, 2, Bundle::Tangent, true, &config)?.iter().enumerate() {
        out += &format!("c_{}(T) = {}\n", j + 1, render_text(c));
    }
    let ch = graded_components(&ch_tangent(&spec, 3, &config)?, 3);
    let agree = chern_from_ch(&ch, 3)? == chern_exp_oracle(&ch, 3)?;
    out += &format!("partition formula = exp(sum (-1)^(r-1) (r-1)! ch_r) through c_3: {agree}\n");
    Ok(out)
}

#[allow(dead_code)]
fn main() -> mgn_chern::Result<()> {
    print!("{}", run()?);
    Ok(())
}
