//! The two length scales of a double-slit pattern and how they set the
//! demands on the detection optics.
//!
//! Fringe spacing goes as lambda L / d, envelope width as 2 lambda L / b, so
//! their ratio is fixed by the slit geometry alone: 2 d / b fringes fit under
//! the central envelope no matter how far away the detector sits.

use twinslit::pattern::{envelope_width, fringe_spacing, PatternParams};
use twinslit::units::MM;

fn describe(label: &str, p: &PatternParams) {
    let dx = fringe_spacing(p);
    let env = envelope_width(p);
    println!("{label}");
    println!("  slit separation d     = {:.3} mm", p.slit_separation / MM);
    println!("  slit width b          = {:.3} mm", p.slit_width / MM);
    println!("  fringe spacing        = {:.3} mm", dx / MM);
    println!("  envelope full width   = {:.2} mm", env / MM);
    println!("  fringes per envelope  = {:.1}", env / dx);
    println!();
}

fn main() {
    let measured = PatternParams::default();
    describe("as-built slits (etched in a metal film)", &measured);

    let design = PatternParams {
        slit_separation: 0.48 * MM,
        slit_width: 0.12 * MM,
        ..PatternParams::default()
    };
    describe("design-target slits", &design);

    // a detector scanning in 0.1 mm steps must resolve the fringe period;
    // count how many samples land on each fringe
    let step = 0.0735 * MM;
    println!(
        "a {:.1} um scan step gives {:.1} samples per fringe",
        step / MM * 1e3,
        fringe_spacing(&measured) / step
    );
}
