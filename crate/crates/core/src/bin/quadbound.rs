fn main() {
    std::process::exit(quadbound::cli::run(std::env::args_os()));
}
