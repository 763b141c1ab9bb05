// Bernoulli numbers, the `a_m` constants and the Todd coefficients they feed.

use mgn_chern::arith::{a_coeff, bernoulli, factorial};
use mgn_chern::grr::todd_coefficients;

pub fn run() -> mgn_chern::Result<String> {
    let mut out = String::from(" k  B_k            a_k\n");
    for k in 0..=12i64 {
        let a = if k >= 3 { a_coeff(k)?.to_string() } else { "-".into() };
        out += &format!("{k:>2}  {:<13} {a}\n", bernoulli(k)?.to_string());
    }
    // t/(e^t - 1) = sum B_k t^k / k!
    let todd = todd_coefficients(8)?;
    let from_series: Vec<String> = (0..=8).map(|k| (&todd[k as usize] * &factorial(k)).to_string()).collect();
    out += &format!("k! [t^k] t/(e^t-1): {}\n", from_series.join(" "));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> mgn_chern::Result<()> {
    print!("{}", run()?);
    Ok(())
}
