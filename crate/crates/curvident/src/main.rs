fn main() {
    std::process::exit(curvident::cli::run_from_args(std::env::args_os()));
}
