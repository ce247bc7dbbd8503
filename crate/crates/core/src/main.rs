fn main() {
    std::process::exit(relaxed_micromorphic::cli::run_cli(std::env::args_os()));
}
