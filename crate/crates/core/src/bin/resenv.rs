fn main() {
    std::process::exit(resenv::verify::cli::run());
}
