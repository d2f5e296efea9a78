fn main() {
    std::process::exit(fracext::cli::run(std::env::args_os()));
}
