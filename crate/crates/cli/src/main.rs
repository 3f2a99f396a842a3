fn main() {
    std::process::exit(rabiwave_cli::run_cli(std::env::args_os()));
}
