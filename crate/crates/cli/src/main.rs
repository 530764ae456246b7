fn main() {
    std::process::exit(rydberg_cli::run(std::env::args_os()));
}
