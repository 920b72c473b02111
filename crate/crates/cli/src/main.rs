fn main() {
    std::process::exit(dkp_cli::run(std::env::args_os()));
}
