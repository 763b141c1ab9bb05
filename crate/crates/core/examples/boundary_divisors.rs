// Boundary divisors for named markings and the atoms delta expands to.

use mgn_chern::taut::{
    enumerate_boundary, expand_concrete, render_text, BoundaryDivisor, Generator, ModuliSpec, TautExpr,
};

pub fn run() -> mgn_chern::Result<String> {
    let mut out = String::new();
    for (g, n) in [(0, 5), (0, 6), (1, 1), (2, 0), (1, 3)] {
        let spec = ModuliSpec::concrete_n(g, n)?;
        let divisors = enumerate_boundary(&spec)?;
        let irr = divisors.iter().filter(|d| matches!(d, BoundaryDivisor::Irreducible)).count();
        out += &format!("M({g},{n}): {} divisors ({irr} irreducible)\n", divisors.len());
    }
    let spec = ModuliSpec::concrete_n(1, 2)?;
    let delta = TautExpr::gen(&spec, 1, Generator::Delta)?;
    out += &format!("delta on M(1,2) = {}\n", render_text(&expand_concrete(&delta, &spec)?));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> mgn_chern::Result<()> {
    print!("{}", run()?);
    Ok(())
}
