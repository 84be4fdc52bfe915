fn main() {
    std::process::exit(busemann::cli::run(std::env::args_os()));
}
