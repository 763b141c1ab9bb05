// The Hodge bundle character and the kappa/lambda basis change.

use mgn_chern::formulas::{hodge_ch, kappa1_in_lambda_basis, lambda_in_kappa_basis, HodgeNormalization};
use mgn_chern::taut::{render_text, ModuliSpec};

pub fn run() -> mgn_chern::Result<String> {
    let spec = ModuliSpec::generic(3, 1)?;
    let mut out = String::new();
    let h = hodge_ch(&spec, 5, HodgeNormalization::default())?;
    for d in 1..=5 {
        out += &format!("ch_{d}(E) = {}\n", render_text(&h.component(d)));
    }
    out += &format!("kappa_1 = {}\n", render_text(&kappa1_in_lambda_basis(&spec, 1)));
    out += &format!("lambda = {}\n", render_text(&lambda_in_kappa_basis(&spec, 1)));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> mgn_chern::Result<()> {
    print!("{}", run()?);
    Ok(())
}
