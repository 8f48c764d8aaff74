fn main() {
    std::process::exit(novflow_cli::run(std::env::args()));
}
