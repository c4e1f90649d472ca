//! How the source size caps the fringe contrast.
//!
//! The slits are lit by a spot of finite size, not a point: each source
//! point lays down a shifted fringe pattern, and the shifts smear the sum.
//! For a Gaussian spot of waist w0 at distance z the surviving visibility is
//! exp(-(pi d w0)^2 / (lambda z)^2), so focusing the pump tighter (smaller
//! w0) directly buys fringe contrast.

use twinslit::coherence::{
    focused_waist, source_angular_size, unfocused_angular_size, visibility_from_source,
    SourceModel,
};
use twinslit::pattern::{partial_coherence_density, fringe_spacing, PatternParams};
use twinslit::units::MM;

fn main() {
    let source = SourceModel::default();
    let p = PatternParams::default();

    let w0 = focused_waist(&source);
    let v = visibility_from_source(p.slit_separation, &source, p.wavelength);
    println!("pump waist at the lens     {:.3} mm", source.pump_waist / MM);
    println!("focused waist at the crystal {:.4} mm", w0 / MM);
    println!(
        "angular size seen from the slits: {:.2} mrad focused, {:.2} mrad unfocused",
        source_angular_size(&source) * 1e3,
        unfocused_angular_size(&source) * 1e3
    );
    println!("predicted fringe visibility  {v:.3}");
    println!();

    // contrast read off the pattern itself
    let shaped = PatternParams { visibility: v, ..p.clone() };
    let dx = fringe_spacing(&shaped);
    let hi = partial_coherence_density(0.0, &shaped);
    let lo = partial_coherence_density(0.5 * dx, &shaped);
    println!(
        "central fringe: max {hi:.2}, min {lo:.2} counts/s, contrast {:.3}",
        (hi - lo) / (hi + lo)
    );
    println!();

    // how the prediction moves with focusing strength
    println!("focal length -> waist -> visibility:");
    for f_cm in [15.0, 20.0, 25.0, 35.0, 50.0] {
        let s = SourceModel { focus_length: f_cm / 100.0, ..source.clone() };
        let vi = visibility_from_source(p.slit_separation, &s, p.wavelength);
        println!(
            "  f = {f_cm:>4.0} cm   w0 = {:.4} mm   V = {vi:.3}",
            focused_waist(&s) / MM
        );
    }
}
