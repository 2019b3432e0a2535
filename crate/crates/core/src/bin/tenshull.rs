fn main() {
    std::process::exit(tenshull::cli::run());
}
