fn main() {
    std::process::exit(xiaudit::cli::main());
}
