//! Heralded single-photon double-slit interference, end to end: analytic
//! fringe models, photon-counting Monte Carlo, and least-squares recovery of
//! slit geometry from coincidence scans.
//!
//! The crate is organized around the life cycle of one experiment:
//!
//! 1. [`pattern`]: Fraunhofer fringe and envelope models on the detection
//!    plane, plus partial-coherence and quantum-eraser variants.
//! 2. [`coherence`]: pump-focusing optics (focused waist, source angular
//!    size) and the Gaussian-source visibility prediction.
//! 3. [`sim`]: event-level simulation of a scanning coincidence counter with
//!    Poisson counts, accidentals, and the beam-splitter g2 test.
//! 4. [`fit`]: Levenberg-Marquardt fits of the pattern models to scan data,
//!    with Poisson weighting and automatic initial guesses.
//! 5. [`io`]: flat config files, scan CSVs, fit reports, ASCII and SVG plots.
//!
//! Each capability has a runnable example:
//!
//! ```text
//! cargo run --release --example pattern_basics      # geometry: fringe spacing, envelope width
//! cargo run --release --example double_slit         # ideal two-slit curve, ASCII plotted
//! cargo run --release --example single_slit         # one-slit envelope and its secondary maxima
//! cargo run --release --example partial_coherence   # source size -> visibility, degraded fringes
//! cargo run --release --example quantum_eraser      # marked paths, erased paths, analyzer sweep
//! cargo run --release --example aperture_resolution # collection-slit smearing of the fringes
//! cargo run --release --example photon_buildup      # arrival-by-arrival histogram of the pattern
//! cargo run --release --example simulate_scan       # synthetic coincidence scan -> CSV
//! cargo run --release --example fit_scan            # simulate, fit, compare truth vs estimates
//! cargo run --release --example g2_experiment       # heralded vs Poissonian vs accidental-heavy g2
//! ```
//!
//! A thin `twinslit` binary wraps the same library calls as subcommands
//! (`pattern`, `simulate`, `fit`, `eraser`, `g2`, `plot`); see `--help`.

pub mod aperture;
pub mod cli;
pub mod coherence;
pub mod eraser;
pub mod fit;
pub mod io;
pub mod pattern;
pub mod sim;
pub mod stats;
pub mod units;

pub use eraser::EraserSetup;
pub use pattern::{PatternModel, PatternParams};
pub use sim::{G2Result, ScanConfig, ScanRecord};
