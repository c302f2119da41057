fn main() {
    std::process::exit(mrey_cli::run(std::env::args_os()));
}
