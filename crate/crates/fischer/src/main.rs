fn main() {
    std::process::exit(fischer::cli::run(std::env::args_os()));
}
