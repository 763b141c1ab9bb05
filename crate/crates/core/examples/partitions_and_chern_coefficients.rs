// Partitions of j and the coefficient each contributes when converting a
// Chern character into Chern classes.

use mgn_chern::combinatorics::{chern_partition_coeff, partitions};

pub fn run() -> mgn_chern::Result<String> {
    let mut out = String::new();
    for j in 1..=4 {
        out += &format!("c_{j} =");
        for mu in partitions(j)? {
            let ch: Vec<String> = mu.parts().iter().map(|r| format!("ch_{r}")).collect();
            out += &format!(" + ({}) {}", chern_partition_coeff(&mu), ch.join(" "));
        }
        out += "\n";
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> mgn_chern::Result<()> {
    print!("{}", run()?);
    Ok(())
}
