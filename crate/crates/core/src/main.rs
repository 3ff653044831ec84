fn main() {
    std::process::exit(dissociation::cli::run(std::env::args_os()));
}
