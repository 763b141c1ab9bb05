// The two-variable series identities behind the boundary and kappa terms.
// The kappa series only closes up with `+ a_m`; both signs are shown.

use mgn_chern::grr::{
    kappa_series_lhs, kappa_series_rhs, verify_kappa_series_with, verify_theta, verify_todd_bernoulli, KappaSeries,
};

pub fn run() -> mgn_chern::Result<String> {
    let mut out = format!("theta identity through degree 12: {}\n", verify_theta(12)?);
    out += &format!("todd / bernoulli through degree 20: {}\n", verify_todd_bernoulli(20)?);
    let lhs = kappa_series_lhs(6)?;
    for sign in [KappaSeries::MinusA, KappaSeries::PlusA] {
        let rhs = kappa_series_rhs(6, sign)?;
        let coeffs: Vec<String> = (1..=6).map(|m| format!("{}|{}", lhs.coeff(0, m), rhs.coeff(0, m))).collect();
        out += &format!(
            "{sign:?}: holds through 12: {}; psi^m lhs|rhs {}\n",
            verify_kappa_series_with(12, sign)?,
            coeffs.join(" ")
        );
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> mgn_chern::Result<()> {
    print!("{}", run()?);
    Ok(())
}
