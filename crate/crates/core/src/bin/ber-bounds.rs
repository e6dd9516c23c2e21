fn main() {
    std::process::exit(ber_bounds::cli::main());
}
