fn main() {
    std::process::exit(starseg::cli::main());
}
