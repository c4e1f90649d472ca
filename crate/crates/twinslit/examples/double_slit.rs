//! The ideal two-slit interference pattern, plotted in the terminal.
//!
//! Rate follows sinc^2(beta) cos^2(alpha): fast cos^2 fringes under the slow
//! single-slit diffraction envelope. The first interference zero sits half a
//! fringe from the central maximum, the first envelope zero lambda L / b out.

use twinslit::pattern::{double_slit_density, fringe_spacing, PatternParams};
use twinslit::io::ascii_plot;
use twinslit::sim::ScanConfig;
use twinslit::units::MM;

fn main() {
    let p = PatternParams::default();
    let xs = ScanConfig::default().positions();
    let ys: Vec<f64> = xs.iter().map(|&x| double_slit_density(x, &p)).collect();

    let xs_mm: Vec<f64> = xs.iter().map(|&x| x / MM).collect();
    print!("{}", ascii_plot(&xs_mm, &ys, "ideal double slit, rate vs position (mm)"));

    let dx = fringe_spacing(&p);
    println!();
    println!("peak rate            {:.2} counts/s", double_slit_density(0.0, &p));
    println!(
        "rate half a fringe out  {:.2e} counts/s (interference zero)",
        double_slit_density(0.5 * dx, &p)
    );
    println!(
        "rate one fringe out     {:.2} counts/s (next maximum, envelope reduced)",
        double_slit_density(dx, &p)
    );
}
