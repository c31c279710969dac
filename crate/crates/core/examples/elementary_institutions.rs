// Elementary institutions and the satisfaction condition.

use afsys::catalog;
use afsys::institution::{check_elementary, ElementaryFailure};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let inst = catalog::inst2();
    println!(
        "INST2 satisfies the condition: {}",
        check_elementary(&inst).passed()
    );

    // Flip one bit at S2: n2 stops satisfying t2, the translation of s2.
    let mut sat: Vec<Vec<Vec<bool>>> = (0..2).map(|x| inst.sat(x).to_vec()).collect();
    sat[1][1][1] = false;
    let broken = inst.with_sat(sat)?;
    match check_elementary(&broken) {
        afsys::Outcome::Fail(ElementaryFailure::Satisfaction {
            arrow,
            model,
            sentence,
        }) => {
            let sign = broken.sign();
            println!(
                "fails along {}: model {} and sentence {}",
                sign.arrow_name(arrow),
                broken.models().set(sign.cod(arrow))[model],
                broken.sen().set(sign.dom(arrow))[sentence]
            );
        }
        other => panic!("unexpected verdict {other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
