fn main() {
    std::process::exit(cnc_core::cli::run(std::env::args_os()));
}
