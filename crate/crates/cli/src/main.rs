fn main() {
    std::process::exit(benford_cli::run());
}
