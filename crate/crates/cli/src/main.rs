fn main() {
    std::process::exit(cayley_spectra_cli::run(std::env::args_os()));
}
