fn main() {
    std::process::exit(complex_cf::cli::main());
}
