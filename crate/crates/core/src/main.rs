fn main() {
    std::process::exit(hurst_core::cli::main_with_args(std::env::args_os()));
}
