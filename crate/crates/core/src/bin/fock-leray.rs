fn main() {
    std::process::exit(fock_leray::cli::run(std::env::args_os()));
}
