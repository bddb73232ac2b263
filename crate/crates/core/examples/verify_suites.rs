//! Runs verification suites from the library and through the command-line
//! entry point.

use padic_fractal::cli::{dispatch, suites};
use padic_fractal::complex_map::{MapParams, Order};
use padic_fractal::Result;

pub fn run_example() -> Result<()> {
    let params = MapParams::real(3, Order::Infinite, 0.25)?;
    let report = suites::scaling(&params, 200, 24, 7, false)?;
    print!("{report}");
    let report = suites::symmetry(&params, 200, 20, 7)?;
    print!("{report}");
    let report = suites::group(2, 1.0, 1000, 16, 7)?;
    println!("group and metric axioms pass: {}", report.passed());

    let code = dispatch(["padic-fractal", "certify", "--p", "2", "--m", "0", "--s", "0.3"]);
    println!("certify exit code {code}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
