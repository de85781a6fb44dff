fn main() {
    std::process::exit(trideg::cli::main());
}
