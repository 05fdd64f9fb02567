fn main() {
    std::process::exit(zlq::cli::main());
}
