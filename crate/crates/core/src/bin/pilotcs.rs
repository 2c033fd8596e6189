fn main() {
    std::process::exit(pilotcs::harness::cli::main_from(std::env::args_os()));
}
