fn main() {
    std::process::exit(coupled_coincidence::cli::main());
}
