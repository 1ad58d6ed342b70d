fn main() {
    std::process::exit(tropical_ep::cli::run_from_args(std::env::args_os()));
}
