fn main() {
    std::process::exit(eivtls::cli::run(std::env::args_os()));
}
