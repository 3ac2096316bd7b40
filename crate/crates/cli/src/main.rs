fn main() {
    std::process::exit(bubblelab_cli::run(std::env::args_os()));
}
