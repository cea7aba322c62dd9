fn main() {
    std::process::exit(detmax::cli::run(std::env::args_os()));
}
