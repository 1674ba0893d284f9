fn main() {
    std::process::exit(thermoelastic::cli::main_with_args(std::env::args_os()));
}
