fn main() {
    std::process::exit(twinslit::cli::run(std::env::args_os()));
}
