fn main() {
    std::process::exit(alexandrov::cli::run(std::env::args_os()));
}
