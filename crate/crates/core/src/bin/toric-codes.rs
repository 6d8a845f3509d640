fn main() {
    std::process::exit(toric_codes::cli::run());
}
