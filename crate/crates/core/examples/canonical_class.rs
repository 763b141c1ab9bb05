// The first Chern class of the cotangent bundle in the lambda basis, for a
// few (g, n), generic and with named markings.

use mgn_chern::formulas::canonical_class;
use mgn_chern::taut::{expand_concrete, render_text, ModuliSpec};

pub fn run() -> mgn_chern::Result<String> {
    let mut out = String::new();
    for (g, n) in [(0, 4), (1, 1), (2, 0), (2, 1), (3, 2)] {
        let k = canonical_class(&ModuliSpec::generic(g, n)?)?;
        out += &format!("K on M({g},{n}) = {}\n", render_text(&k));
    }
    let spec = ModuliSpec::concrete(0, vec!["a".into(), "b".into(), "c".into(), "d".into()])?;
    let k = canonical_class(&spec)?;
    out += &format!("K on M(0,{{a,b,c,d}}) = {}\n", render_text(&k));
    out += &format!("  with delta expanded: {}\n", render_text(&expand_concrete(&k, &spec)?));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> mgn_chern::Result<()> {
    print!("{}", run()?);
    Ok(())
}
